#include "trihex/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace trihex {

namespace {

int mod3(int k) { return ((k % 3) + 3) % 3; }

// Exits through an edge: new rhombus and the edge it is entered through.
GluedEdge leave(const RhombusCoord& r, int edge) {
    const int i = r.i;
    switch (edge) {
    case 1: return {{mod3(i + 1), r.c - 2 * basis_vector(i + 1)}, 3};
    case 2: return {{mod3(i + 1), r.c + 2 * basis_vector(i)}, 4};
    case 3: return {{mod3(i - 1), r.c + 2 * basis_vector(i)}, 1};
    case 4: return {{mod3(i - 1), r.c - 2 * basis_vector(i - 1)}, 2};
    default: throw std::invalid_argument("glue: edge label must be 1..4");
    }
}

// Coefficients of v_i in the basis (v0, v1).
std::array<int64_t, 2> coef(int i) {
    switch (mod3(i)) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    default: return {-1, -1};
    }
}

// eta0 and eta1 as weighted sums of edge arcs (each edge runs between two punctures). An arc
// joining E3(R^i) to E1(R^{i-1}), or E2(R^i) to E4(R^{i+1}), carries weight coef(i); a crossing
// that leaves R^i through E3 or E2 counts positively.
std::array<int64_t, 2> eta_weight(int sheet, int edge) {
    switch (edge) {
    case 3:
    case 2: return coef(sheet);
    case 1: {
        auto w = coef(sheet + 1);
        return {-w[0], -w[1]};
    }
    default: {
        auto w = coef(sheet - 1);
        return {-w[0], -w[1]};
    }
    }
}

using QPt = std::array<mpq_class, 2>;

struct Crossing {
    mpq_class t;
    int edge;
};

// Edge crossings of the developed segment p -> p + d, in order. Rejects corners.
std::vector<int> crossings(const QPt& p, const QPt& d) {
    std::vector<Crossing> cs;
    for (int axis = 0; axis < 2; ++axis) {
        if (sgn(d[axis]) == 0) continue;
        mpq_class a = p[axis], b = p[axis] + d[axis];
        bool up = sgn(d[axis]) > 0;
        // integer lines strictly between a and b (endpoints are never on a line for our paths)
        mpz_class lo, hi;
        if (up) {
            mpz_fdiv_q(lo.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
            lo += 1;
            mpz_cdiv_q(hi.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
            hi -= 1;
            for (mpz_class k = lo; k <= hi; ++k) cs.push_back({(mpq_class(k) - a) / d[axis], axis == 0 ? 4 : 1});
        } else {
            mpz_cdiv_q(hi.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
            hi -= 1;
            mpz_fdiv_q(lo.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
            lo += 1;
            for (mpz_class k = hi; k >= lo; --k) cs.push_back({(mpq_class(k) - a) / d[axis], axis == 0 ? 2 : 3});
        }
    }
    std::sort(cs.begin(), cs.end(), [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
    for (size_t k = 1; k < cs.size(); ++k)
        if (cs[k].t == cs[k - 1].t) throw std::invalid_argument("curve passes through a puncture");
    std::vector<int> edges;
    for (auto& c : cs) edges.push_back(c.edge);
    return edges;
}

bool on_grid_line(const QPt& p) {
    for (auto& v : p)
        if (v.get_den() == 1) return true;
    return false;
}

// Base point and polygonal loops for the generators, in developed lattice coordinates.
const QPt kBase{mpq_class(-2, 5), mpq_class(-3, 5)};

std::vector<QPt> generator_path(Generator g) {
    switch (g) {
    case Generator::Alpha:  // core of the cylinder in direction v1, through all three rhombi
        return {{mpq_class(3), mpq_class(0)}};
    case Generator::Beta1:  // horizontal loop in the upper half of rhombus 0
        return {{mpq_class(-1), mpq_class(-1)}};
    case Generator::Beta2:  // horizontal loop in the lower half of rhombus 0
        return {{mpq_class(-1, 5), mpq_class(1, 5)}, {mpq_class(-1), mpq_class(-1)}, {mpq_class(1, 5), mpq_class(-1, 5)}};
    default:  // horizontal loop in the upper half of rhombus 2, then back along alpha
        return {{mpq_class(11, 10), mpq_class(0)},
                {mpq_class(-1), mpq_class(-1)},
                {mpq_class(-11, 10), mpq_class(0)},
                {mpq_class(-3), mpq_class(0)}};
    }
}

std::vector<QPt> word_path(const CurveWord& w) {
    std::vector<QPt> out;
    for (const Letter& l : w) {
        auto p = generator_path(l.g);
        if (l.inverse) {
            std::reverse(p.begin(), p.end());
            for (auto& d : p) d = {-d[0], -d[1]};
        }
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

struct Walk {
    RhombusCoord r{0, {}};
    QPt pos = kBase;
    int64_t count = 0;
    std::array<int64_t, 2> eta{0, 0};

    void run(const std::vector<QPt>& path) {
        for (const QPt& d : path) {
            for (int e : crossings(pos, d)) {
                auto w = eta_weight(r.i, e);
                eta[0] += w[0];
                eta[1] += w[1];
                r = leave(r, e).rhombus;
                ++count;
            }
            pos = {pos[0] + d[0], pos[1] + d[1]};
            if (on_grid_line(pos)) throw std::invalid_argument("curve passes along an edge");
        }
    }
};

}  // namespace

SurfacePoint surface_point_of(const SectionPoint& s) { return {s.rhombus, {-s.x, -s.x}}; }

GluedEdge glue(const RhombusCoord& r, int edge) { return leave(r, edge); }

std::vector<SurfacePoint> surface_flow(const SurfacePoint& p, Vec2 d, double t) {
    double len = std::sqrt(d.x * d.x + d.y * d.y - d.x * d.y);
    if (len == 0) throw std::invalid_argument("surface_flow: zero direction");
    d = (1.0 / len) * d;
    std::vector<SurfacePoint> out{p};
    SurfacePoint cur = p;
    double left = t;
    while (left > 0) {
        double best = left;
        int edge = 0;
        auto consider = [&](double target, double coord, double rate, int e) {
            if (rate == 0) return;
            double s = (target - coord) / rate;
            if (s > 0 && s < best) {
                best = s;
                edge = e;
            }
        };
        consider(0, cur.local.y, d.y, 1);
        consider(-1, cur.local.x, d.x, 2);
        consider(-1, cur.local.y, d.y, 3);
        consider(0, cur.local.x, d.x, 4);
        cur.local = cur.local + best * d;
        left -= best;
        if (edge != 0) {
            GluedEdge g = leave(cur.rhombus, edge);
            cur.rhombus = g.rhombus;
            if (edge == 1) cur.local.y = -1;
            if (edge == 3) cur.local.y = 0;
            if (edge == 2) cur.local.x = 0;
            if (edge == 4) cur.local.x = -1;
        }
        out.push_back(cur);
    }
    return out;
}

std::string to_string(Generator g) {
    switch (g) {
    case Generator::Alpha: return "a";
    case Generator::Beta0: return "b0";
    case Generator::Beta1: return "b1";
    default: return "b2";
    }
}

CurveWord parse_word(const std::string& s) {
    CurveWord w;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        Letter l;
        if (tok == "a" || tok == "A")
            l.g = Generator::Alpha;
        else if (tok.size() == 2 && (tok[0] == 'b' || tok[0] == 'B') && tok[1] >= '0' && tok[1] <= '2')
            l.g = Generator(1 + (tok[1] - '0'));
        else
            throw std::invalid_argument("parse_word: unknown letter " + tok);
        l.inverse = std::isupper(static_cast<unsigned char>(tok[0]));
        w.push_back(l);
    }
    return w;
}

std::string to_string(const CurveWord& w) {
    std::string s;
    for (const Letter& l : w) {
        std::string t = to_string(l.g);
        if (l.inverse) t[0] = char(std::toupper(t[0]));
        if (!s.empty()) s += " ";
        s += t;
    }
    return s;
}

std::array<int64_t, 2> eta_intersections(const CurveWord& w) {
    // per generator, then linearly
    std::array<int64_t, 2> out{0, 0};
    for (const Letter& l : w) {
        Walk walk;
        walk.run(generator_path(l.g));
        int s = l.inverse ? -1 : 1;
        out[0] += s * walk.eta[0];
        out[1] += s * walk.eta[1];
    }
    return out;
}

LatticeVec monodromy_h(const CurveWord& w) {
    auto e = eta_intersections(w);
    return 2 * e[0] * basis_vector(0) + 2 * e[1] * basis_vector(1);
}

Development develop_curve(const CurveWord& w) {
    Walk walk;
    walk.run(word_path(w));
    Development d;
    d.displacement = walk.r.c;
    d.crossings = walk.count;
    QPt diff{walk.pos[0] - kBase[0], walk.pos[1] - kBase[1]};
    d.closed = walk.r.i == 0 && diff[0].get_den() == 1 && diff[1].get_den() == 1;
    return d;
}

std::vector<CylinderInfo> cylinder_decomposition(LatticeVec v) {
    if (v.is_zero() || !is_visible(v)) throw std::invalid_argument("cylinder_decomposition: direction must be visible");
    // a point whose leaf avoids the puncture: p.x*n - p.y*m must not be an integer
    // (-1/7, -j/7) works for some j since v is visible
    QPt p;
    for (long j = 1; j < 7; ++j) {
        p = {mpq_class(-1, 7), mpq_class(-j, 7)};
        mpq_class z = p[0] * mpq_class(v.n) - p[1] * mpq_class(v.m);
        if (z.get_den() != 1) break;
    }
    QPt d{mpq_class(v.m), mpq_class(v.n)};
    std::vector<int> edges = crossings(p, d);

    // sheet permutation and deck increment over one period of the torus leaf
    std::array<int, 3> perm{};
    std::array<LatticeVec, 3> deck{};
    for (int s = 0; s < 3; ++s) {
        RhombusCoord r{s, {}};
        for (int e : edges) r = leave(r, e).rhombus;
        perm[s] = r.i;
        deck[s] = r.c;
    }
    Vec2 hol = v.to_vec2();
    int orient = (hol.x > 1e-12 || (std::abs(hol.x) <= 1e-12 && hol.y > 0)) ? 1 : -1;

    std::vector<CylinderInfo> out;
    std::array<bool, 3> seen{};
    for (int s = 0; s < 3; ++s) {
        if (seen[s]) continue;
        int len = 0;
        LatticeVec total;
        for (int q = s; !seen[q]; q = perm[q]) {
            seen[q] = true;
            total = total + deck[q];
            ++len;
        }
        CylinderInfo c;
        c.direction = v;
        c.sheets = len;
        c.holonomy_lattice = (orient * len) * v;
        c.holonomy = c.holonomy_lattice.to_vec2();
        c.area = QSqrt3(0, mpq_class(len, 2));
        c.deck = orient * total;
        c.lift = total.is_zero() ? LiftKind::Cylinder : LiftKind::Strip;
        out.push_back(c);
    }
    return out;
}

OrbitEquivalence orbit_equivalence(const SectionPoint& s, double theta, int64_t n) {
    OrbitEquivalence oe;
    oe.start = section_ray(s, theta);
    oe.surface_hits = section_orbit(s, theta, n);
    TraceOptions opt;
    opt.max_steps = 3 * (n + 2);
    opt.detect_recurrence = false;
    TraceResult tr = trace_float(oe.start.pos, oe.start.dir, opt);
    auto hits = tracer_diagonal_hits(tr);
    double surface_time = 0.5 * kSqrt3 / std::sin(theta);
    for (size_t k = 0; k < hits.size() && k < size_t(n + 1); ++k) {
        oe.tiling_hits.push_back(hits[k].point);
        if (k + 1 < hits.size() && k < size_t(n)) oe.pairs.push_back({surface_time, hits[k + 1].time - hits[k].time});
    }
    if (oe.tiling_hits.size() < oe.surface_hits.size()) oe.itineraries_match = false;
    for (size_t k = 0; k < std::min(oe.tiling_hits.size(), oe.surface_hits.size()); ++k) {
        if (!(oe.tiling_hits[k].rhombus == oe.surface_hits[k].rhombus)) oe.itineraries_match = false;
        oe.max_position_error = std::max(oe.max_position_error, std::abs(oe.tiling_hits[k].x - oe.surface_hits[k].x));
    }
    return oe;
}

RayState tiling_state_at(const SectionPoint& s, double theta, double u) {
    CocycleStep cs = section_return(s, theta);
    double target = u * cs.time_tiling / cs.time_surface;
    RayState st = section_ray(s, theta);
    for (int guard = 0; guard < 8; ++guard) {
        RayState nx = refract_step(st);
        double seg = norm(nx.pos - st.pos);
        if (seg >= target) {
            st.pos = st.pos + target * st.dir;
            return st;
        }
        target -= seg;
        st = nx;
    }
    throw std::logic_error("tiling_state_at: time beyond one return");
}

}  // namespace trihex
