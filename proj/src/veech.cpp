#include "trihex/veech.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace trihex {

IntMat2 IntMat2::inverse() const {
    int64_t dt = det();
    if (dt != 1 && dt != -1) throw std::domain_error("IntMat2: not unimodular");
    return {d * dt, -b * dt, -c * dt, a * dt};
}

std::string IntMat2::to_string() const {
    return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," + std::to_string(d) + "]]";
}

namespace {

const IntMat2 kR{0, 1, 1, 0};
const IntMat2 kP0{0, 1, -1, 2};
const IntMat2 kP1{1, 3, 0, 1};
const IntMat2 kP2{1, 0, -3, 1};
const IntMat2 kMinusI{-1, 0, 0, -1};

const std::vector<std::pair<std::string, IntMat2>>& moves() {
    static const std::vector<std::pair<std::string, IntMat2>> m{
        {"R", kR},          {"P0", kP0},         {"P0^-1", kP0.inverse()}, {"P1", kP1},
        {"P1^-1", kP1.inverse()}, {"P2", kP2}, {"P2^-1", kP2.inverse()}, {"-I", kMinusI},
    };
    return m;
}

std::string invert_name(const std::string& s) {
    if (s == "R" || s == "-I") return s;
    if (s.size() > 3 && s.compare(s.size() - 3, 3, "^-1") == 0) return s.substr(0, s.size() - 3);
    return s + "^-1";
}

// A with A v = base, built as a word (leftmost factor applied last).
GroupElement reduce_to_base(LatticeVec v) {
    const LatticeVec base = cusp_class(v) == CuspClass::Xi ? LatticeVec{1, 1} : LatticeVec{1, 0};
    GroupElement g{kIdentity, {}};
    auto apply = [&](const std::string& name, const IntMat2& m, int64_t times) {
        for (int64_t k = 0; k < times; ++k) {
            v = m(v);
            g.matrix = m * g.matrix;
            g.word.insert(g.word.begin(), name);
        }
    };
    // continued-fraction style shrinking: take the power of a parabolic generator that lowers the size most
    auto size = [](LatticeVec w) { return std::max({std::abs(w.m), std::abs(w.n), std::abs(w.m - w.n)}); };
    const std::array<std::pair<const char*, IntMat2>, 3> parabolics{{{"P0", kP0}, {"P1", kP1}, {"P2", kP2}}};
    for (bool changed = true; changed;) {
        changed = false;
        int best_p = -1;
        int64_t best_k = 0, best_size = size(v);
        for (int p = 0; p < 3; ++p) {
            for (int dir : {1, -1}) {
                IntMat2 step = dir > 0 ? parabolics[p].second : parabolics[p].second.inverse();
                LatticeVec w = v;
                int64_t prev = size(v);
                for (int64_t k = 1;; ++k) {
                    w = step(w);
                    if (size(w) >= prev) break;
                    prev = size(w);
                    if (prev < best_size) {
                        best_size = prev;
                        best_p = p;
                        best_k = dir * k;
                    }
                }
            }
        }
        if (best_p >= 0) {
            const IntMat2& m = parabolics[best_p].second;
            std::string name = parabolics[best_p].first;
            if (best_k > 0) apply(name, m, best_k);
            else apply(name + "^-1", m.inverse(), -best_k);
            changed = true;
        }
    }
    // breadth-first search over short words for the remaining distance
    const int64_t bound = std::max(std::abs(v.m), std::abs(v.n)) + 8;
    struct Node {
        LatticeVec v;
        int parent;
        int move;
        int depth;
    };
    std::vector<Node> nodes{{v, -1, -1, 0}};
    std::map<LatticeVec, int> index{{v, 0}};
    std::deque<int> queue{0};
    int found = v == base ? 0 : -1;
    while (found < 0 && !queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        if (nodes[cur].depth >= 12) continue;
        for (int mv = 0; mv < int(moves().size()); ++mv) {
            LatticeVec w = moves()[mv].second(nodes[cur].v);
            if (std::abs(w.m) > bound || std::abs(w.n) > bound || index.count(w)) continue;
            index[w] = int(nodes.size());
            nodes.push_back({w, cur, mv, nodes[cur].depth + 1});
            if (w == base) {
                found = int(nodes.size()) - 1;
                break;
            }
            queue.push_back(int(nodes.size()) - 1);
        }
    }
    if (found < 0) throw std::runtime_error("find_element: search exhausted");
    std::vector<int> path;
    for (int k = found; nodes[k].parent >= 0; k = nodes[k].parent) path.push_back(nodes[k].move);
    for (auto it = path.rbegin(); it != path.rend(); ++it) apply(moves()[*it].first, moves()[*it].second, 1);
    return g;
}

}  // namespace

std::map<std::string, IntMat2> generators() {
    return {{"R", kR},
            {"P0", kP0},
            {"P1", kP1},
            {"P2", kP2},
            {"-I", kMinusI},
            {"RP0", kR * kP0},
            {"P1^-1RP0", kP1.inverse() * kR * kP0}};
}

bool in_veech(const IntMat2& m) {
    int64_t dt = m.det();
    if (dt != 1 && dt != -1) return false;
    return ((m.a + m.b - m.c - m.d) % 3) == 0;
}

std::string to_string(CuspClass c) { return c == CuspClass::Xi ? "Xi" : "NonXi"; }

CuspClass cusp_class(LatticeVec v) {
    if (v.is_zero() || !is_visible(v)) throw std::invalid_argument("cusp_class: vector must be visible");
    return (v.m - v.n) % 3 == 0 ? CuspClass::Xi : CuspClass::NonXi;
}

GroupElement find_element(LatticeVec src, LatticeVec dst) {
    if (cusp_class(src) != cusp_class(dst)) throw ClassMismatch();
    if (src == dst) return {kIdentity, {}};
    GroupElement a = reduce_to_base(src);
    GroupElement b = reduce_to_base(dst);
    GroupElement out;
    out.matrix = b.matrix.inverse() * a.matrix;
    for (auto it = b.word.rbegin(); it != b.word.rend(); ++it) out.word.push_back(invert_name(*it));
    out.word.insert(out.word.end(), a.word.begin(), a.word.end());
    if (out.matrix(src) != dst || !in_veech(out.matrix)) throw std::logic_error("find_element: verification failed");
    return out;
}

IntMat2 evaluate_word(const std::vector<std::string>& word) {
    static const auto table = [] {
        std::map<std::string, IntMat2> t;
        for (auto& [name, m] : generators()) {
            t[name] = m;
            t[invert_name(name)] = m.inverse();
        }
        return t;
    }();
    IntMat2 out = kIdentity;
    for (const std::string& w : word) {
        auto it = table.find(w);
        if (it == table.end()) throw std::invalid_argument("evaluate_word: unknown generator " + w);
        out = out * it->second;
    }
    return out;
}

QMat2 to_standard_basis(const IntMat2& m) {
    const QSqrt3 h(mpq_class(-1, 2));
    const QSqrt3 s(0, mpq_class(1, 2));
    QMat2 C{h, h, s, -s};
    QMat2 M{QSqrt3(m.a), QSqrt3(m.b), QSqrt3(m.c), QSqrt3(m.d)};
    return C * M * C.inverse();
}

}  // namespace trihex
