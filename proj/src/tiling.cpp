#include "trihex/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace trihex {

std::string to_string(TileKind k) {
    switch (k) {
    case TileKind::Hexagon: return "hexagon";
    case TileKind::TriangleUp: return "triangle_up";
    default: return "triangle_down";
    }
}

std::string to_string(Termination t) {
    switch (t) {
    case Termination::Horizon: return "Horizon";
    case Termination::Singular: return "Singular";
    case Termination::Periodic: return "Periodic";
    default: return "DriftPeriodic";
    }
}

Tile tile_of(const Cell& c) {
    int64_t d = c.k - (c.i - c.j);
    Tile t;
    t.anchor = {2 * c.i, 2 * c.j};
    if (d == 0)
        t.kind = TileKind::Hexagon;
    else if (d == 1)
        t.kind = TileKind::TriangleUp;
    else if (d == -1)
        t.kind = TileKind::TriangleDown;
    else
        throw std::logic_error("tile_of: empty cell");
    return t;
}

Cell cell_of(const Tile& t) {
    int64_t i = t.anchor.m / 2, j = t.anchor.n / 2;
    int64_t d = t.kind == TileKind::Hexagon ? 0 : (t.kind == TileKind::TriangleUp ? 1 : -1);
    return {i, j, i - j + d};
}

Vec2 Tile::center() const {
    Vec2 a{double(anchor.m), double(anchor.n)};
    if (kind == TileKind::TriangleUp) a = a + Vec2{2.0 / 3, -2.0 / 3};
    if (kind == TileKind::TriangleDown) a = a + Vec2{-2.0 / 3, 2.0 / 3};
    return from_lattice_coords(a);
}

std::vector<Vec2> Tile::vertices() const {
    std::vector<Vec2> lat;
    if (kind == TileKind::Hexagon)
        lat = {{-1, -1}, {0, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 0}};
    else if (kind == TileKind::TriangleUp)
        lat = {{0, -1}, {1, -1}, {1, 0}};
    else
        lat = {{0, 1}, {-1, 1}, {-1, 0}};
    std::vector<Vec2> out;
    for (Vec2 q : lat) out.push_back(from_lattice_coords(q + Vec2{double(anchor.m), double(anchor.n)}));
    return out;
}

namespace {

int64_t nearest_odd(double u) { return 2 * int64_t(std::floor(u / 2)) + 1; }

double odd_distance(double u) { return std::abs(u - double(nearest_odd(u))); }

i128 floordiv(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Chooses strip indices for the three families. `on_line[f]` marks families whose value is an odd
// integer; `prefer(f)` returns the index to use for such a family (or INT64_MIN to pick the
// hexagon side).
template <class Prefer>
Cell resolve_cell(const std::array<int64_t, 3>& below, const std::array<bool, 3>& on_line, Prefer prefer) {
    // below[f] is the strip index when the value is not on a line; when on a line with value 2q+1
    // the two candidates are q and q+1 and below[f] holds q.
    std::array<int64_t, 3> idx = below;
    int lines = 0;
    int which = -1;
    for (int f = 0; f < 3; ++f)
        if (on_line[f]) {
            ++lines;
            which = f;
        }
    if (lines >= 2) return Cell{INT64_MIN, 0, 0};
    if (lines == 1) {
        int64_t p = prefer(which);
        if (p != INT64_MIN) {
            idx[which] = p;
        } else {
            for (int64_t cand : {below[which], below[which] + 1}) {
                idx[which] = cand;
                if (idx[2] == idx[0] - idx[1]) break;
            }
        }
    }
    return {idx[0], idx[1], idx[2]};
}

Cell cell_from_lattice(Vec2 q, double tol, Vec2 dir_hint, bool use_hint) {
    std::array<double, 3> u{q.x, q.y, q.x - q.y};
    std::array<double, 3> g{dir_hint.x, dir_hint.y, dir_hint.x - dir_hint.y};
    std::array<int64_t, 3> below{};
    std::array<bool, 3> on{};
    for (int f = 0; f < 3; ++f) {
        if (odd_distance(u[f]) <= tol) {
            on[f] = true;
            below[f] = (nearest_odd(u[f]) - 1) / 2;
        } else {
            below[f] = int64_t(std::floor((u[f] + 1) / 2));
        }
    }
    Cell c = resolve_cell(below, on, [&](int f) -> int64_t {
        if (!use_hint || std::abs(g[f]) < 1e-15) return INT64_MIN;
        return g[f] > 0 ? below[f] + 1 : below[f];
    });
    if (c.i == INT64_MIN) throw VertexError(from_lattice_coords(q));
    return c;
}

// Direction after crossing an edge of the given family: minus its mirror image across the edge.
void refract_lattice_dir(int family, double& dx, double& dy) {
    double a = dx, b = dy;
    if (family == 0) { dx = a; dy = a - b; }
    else if (family == 1) { dx = b - a; dy = b; }
    else { dx = -b; dy = -a; }
}

void refract_lattice_dir(int family, int64_t& dx, int64_t& dy) {
    int64_t a = dx, b = dy;
    if (family == 0) { dx = a; dy = a - b; }
    else if (family == 1) { dx = b - a; dy = b; }
    else { dx = -b; dy = -a; }
}

int64_t& family_index(Cell& c, int f) { return f == 0 ? c.i : (f == 1 ? c.j : c.k); }

// Float walker in lattice coordinates.
struct FloatWalker {
    double x, y, dx, dy;
    Cell cell;
    double tol;

    // Advances to the next edge. Returns elapsed parameter (Euclidean length when the direction
    // is a unit vector) and the crossed family. Throws VertexError on a vertex.
    double step(int& family) {
        std::array<double, 3> u{x, y, x - y};
        std::array<double, 3> g{dx, dy, dx - dy};
        double best = INFINITY;
        int bf = -1;
        for (int f = 0; f < 3; ++f) {
            if (std::abs(g[f]) < 1e-15) continue;
            double target = double(2 * family_index(cell, f) + (g[f] > 0 ? 1 : -1));
            double t = (target - u[f]) / g[f];
            if (t < best) {
                best = t;
                bf = f;
            }
        }
        if (bf < 0) throw std::logic_error("FloatWalker: zero direction");
        if (best < 0) best = 0;
        double nx = x + best * dx, ny = y + best * dy;
        double target = double(2 * family_index(cell, bf) + (g[bf] > 0 ? 1 : -1));
        if (bf == 0) nx = target;
        else if (bf == 1) ny = target;
        else ny = nx - target;
        std::array<double, 3> nu{nx, ny, nx - ny};
        for (int f = 0; f < 3; ++f)
            if (f != bf && odd_distance(nu[f]) < tol) throw VertexError(from_lattice_coords({nx, ny}));
        x = nx;
        y = ny;
        family_index(cell, bf) += g[bf] > 0 ? 1 : -1;
        refract_lattice_dir(bf, dx, dy);
        family = bf;
        return best;
    }
};

double lattice_dir_length(double dx, double dy) { return std::sqrt(dx * dx + dy * dy - dx * dy); }

Vec2 cart_dir(double dx, double dy) {
    Vec2 v = from_lattice_coords({dx, dy});
    double n = norm(v);
    return {v.x / n, v.y / n};
}

struct I128Hash {
    size_t operator()(const std::array<i128, 5>& k) const {
        uint64_t h = 1469598103934665603ull;
        for (i128 v : k) {
            uint64_t lo = uint64_t(v), hi = uint64_t(v >> 64);
            h = (h ^ lo) * 1099511628211ull;
            h = (h ^ hi) * 1099511628211ull;
        }
        return size_t(h);
    }
};

void count_tile(TraceResult& r, const Tile& t) {
    if (t.kind == TileKind::Hexagon)
        ++r.hexagons_crossed;
    else
        ++r.triangles_crossed;
}

void set_sign_if_hexagon(TraceResult& r, const Tile& t, Vec2 pos, Vec2 dir, double tol) {
    if (r.sign || t.kind != TileKind::Hexagon) return;
    Vec2 c = t.center();
    double cr = cross(pos - c, dir);
    if (std::abs(cr) > tol) r.sign = cr > 0 ? Orientation::Plus : Orientation::Minus;
}

}  // namespace

Tile locate(Vec2 p, double tol) {
    return tile_of(cell_from_lattice(to_lattice_coords(p), tol, {}, false));
}

Tile locate(const QVec2& p) {
    auto q = to_lattice_coords(p);
    std::array<QSqrt3, 3> u{q[0], q[1], q[0] - q[1]};
    std::array<int64_t, 3> below{};
    std::array<bool, 3> on{};
    for (int f = 0; f < 3; ++f) {
        // strip index floor((u+1)/2); on a line when (u+1)/2 is an integer
        QSqrt3 h = (u[f] + QSqrt3(1)) / QSqrt3(2);
        mpz_class fl = h.floor();
        on[f] = (QSqrt3(mpq_class(fl)) == h);
        below[f] = fl.get_si() - (on[f] ? 1 : 0);
    }
    Cell c = resolve_cell(below, on, [](int) -> int64_t { return INT64_MIN; });
    if (c.i == INT64_MIN) throw VertexError({p.x.to_double(), p.y.to_double()});
    return tile_of(c);
}

Orientation orientation_sign(Vec2 pos, Vec2 dir, double tol) {
    Tile t = locate(pos);
    if (t.kind != TileKind::Hexagon) throw std::invalid_argument("orientation_sign: state not in a hexagon");
    double cr = cross(pos - t.center(), dir);
    if (std::abs(cr) <= tol) throw VertexError(t.center());
    return cr > 0 ? Orientation::Plus : Orientation::Minus;
}

Orientation orientation_sign(const RayState& s, double tol) { return orientation_sign(s.pos, s.dir, tol); }

RayState refract_step(const RayState& s, double tol) {
    Vec2 q = to_lattice_coords(s.pos);
    Vec2 d = to_lattice_coords(s.dir);
    FloatWalker w{q.x, q.y, d.x, d.y, cell_of(s.tile), tol};
    int fam = 0;
    w.step(fam);
    RayState out = s;
    out.pos = from_lattice_coords({w.x, w.y});
    out.dir = cart_dir(w.dx, w.dy);
    out.tile = tile_of(w.cell);
    return out;
}

ExactStart ExactStart::from_rationals(const mpq_class& x, const mpq_class& y) {
    mpz_class den = lcm(x.get_den(), y.get_den());
    ExactStart s;
    s.den = den;
    s.x_num = x.get_num() * (den / x.get_den());
    s.y_num = y.get_num() * (den / y.get_den());
    return s;
}

ExactStart ExactStart::from_qvec(const QVec2& p) {
    auto q = to_lattice_coords(p);
    if (!q[0].is_rational() || !q[1].is_rational())
        throw std::invalid_argument("exact start must have rational lattice coordinates");
    return from_rationals(q[0].a(), q[1].a());
}

QVec2 ExactStart::to_qvec() const {
    mpq_class x(x_num, den), y(y_num, den);
    x.canonicalize();
    y.canonicalize();
    return {QSqrt3(-(x + y) / 2), QSqrt3(0, (x - y) / 2)};
}

namespace {

i128 to_i128(const mpz_class& z) {
    if (mpz_sizeinbase(z.get_mpz_t(), 2) > 100) throw std::overflow_error("coordinate too large for exact tracer");
    std::string s = z.get_str();
    bool neg = s[0] == '-';
    i128 v = 0;
    for (size_t i = neg ? 1 : 0; i < s.size(); ++i) v = v * 10 + (s[i] - '0');
    return neg ? -v : v;
}

void check_bounds(i128 v) {
    const i128 lim = i128(1) << 100;
    if (v > lim || v < -lim) throw std::overflow_error("exact tracer coordinate overflow");
}

}  // namespace

TraceResult trace_exact(const ExactStart& start, LatticeVec dir_in, const TraceOptions& opt) {
    if (dir_in.is_zero()) throw std::invalid_argument("trace_exact: zero direction");
    LatticeVec dir = primitive(dir_in);
    int64_t dm = dir.m, dn = dir.n;

    // Positions stay on the grid (1/(den*K)) Z^2 with K = lcm of the nonzero values |m|, |n|, |m-n|.
    int64_t K = 1;
    for (int64_t v : {dm, dn, dm - dn})
        if (v != 0) K = std::lcm(K, std::abs(v));
    mpz_class Qz = start.den * K;
    i128 Q = to_i128(Qz);
    i128 X = to_i128(start.x_num * K), Y = to_i128(start.y_num * K);

    TraceResult r;
    r.mode = Mode::Exact;
    r.scale = Q;
    const double dlen = lattice_dir_length(double(dm), double(dn));
    auto to_cart = [&](i128 x, i128 y) { return from_lattice_coords({double(x) / double(Q), double(y) / double(Q)}); };

    // Initial cell; a start on an edge is resolved toward the direction of travel.
    std::array<i128, 3> F{X, Y, X - Y};
    std::array<int64_t, 3> G{dm, dn, dm - dn};
    std::array<int64_t, 3> below{};
    std::array<bool, 3> on{};
    for (int f = 0; f < 3; ++f) {
        i128 h = F[f] + Q;  // (u + 1) * Q
        i128 fl = floordiv(h, 2 * Q);
        on[f] = (h == fl * 2 * Q);
        below[f] = int64_t(fl) - (on[f] ? 1 : 0);
    }
    bool along_edge = false;
    Cell cell = resolve_cell(below, on, [&](int f) -> int64_t {
        if (G[f] == 0) {
            along_edge = true;
            return below[f];
        }
        return G[f] > 0 ? below[f] + 1 : below[f];
    });
    Vec2 start_c = to_cart(X, Y);
    r.start_point = r.end_point = start_c;
    if (cell.i == INT64_MIN || along_edge) {
        r.status = Termination::Singular;
        r.singular_vertex = start_c;
        return r;
    }

    std::unordered_map<std::array<i128, 5>, int64_t, I128Hash> seen;
    std::vector<double> time_at{0.0};
    std::vector<LatticeVec> anchor_at{LatticeVec{}};
    double elapsed = 0;

    r.exact_points.push_back({X, Y});
    r.lattice_points.push_back({double(X) / double(Q), double(Y) / double(Q)});

    for (int64_t step = 1; step <= opt.max_steps; ++step) {
        Tile tile = tile_of(cell);
        std::array<i128, 3> Fv{X, Y, X - Y};
        std::array<int64_t, 3> Gv{dm, dn, dm - dn};
        i128 bestN = 0, bestG = 1;
        int bf = -1;
        bool tie = false;
        for (int f = 0; f < 3; ++f) {
            if (Gv[f] == 0) continue;
            i128 L = 2 * i128(family_index(cell, f)) + (Gv[f] > 0 ? 1 : -1);
            i128 N = Q * L - Fv[f];
            i128 g = Gv[f];
            if (g < 0) {
                N = -N;
                g = -g;
            }
            if (bf < 0) {
                bestN = N; bestG = g; bf = f; tie = false;
                continue;
            }
            i128 lhs = N * bestG, rhs = bestN * g;
            if (lhs < rhs) {
                bestN = N; bestG = g; bf = f; tie = false;
            } else if (lhs == rhs) {
                tie = true;
            }
        }
        int64_t gsigned = Gv[bf];
        // parameter t = bestN / (bestG Q) in units of the lattice direction
        i128 numx = bestN * dm, numy = bestN * dn;
        if (numx % bestG != 0 || numy % bestG != 0) throw std::logic_error("trace_exact: position left the rational grid");
        i128 nX = X + numx / bestG, nY = Y + numy / bestG;
        check_bounds(nX);
        check_bounds(nY);
        double dt = double(bestN) / double(bestG) / double(Q) * dlen;
        Vec2 a = to_cart(X, Y), b = to_cart(nX, nY);
        Vec2 cdir = cart_dir(double(dm), double(dn));
        if (opt.record_segments) {
            r.segments.push_back({a, b, tile, cdir, elapsed, elapsed + dt});
            r.exact_dirs.push_back({dm, dn});
            r.lattice_dirs.push_back({double(dm), double(dn)});
            r.exact_points.push_back({nX, nY});
            r.lattice_points.push_back({double(nX) / double(Q), double(nY) / double(Q)});
            r.crossed_family.push_back(bf);
        }
        set_sign_if_hexagon(r, tile, a, cdir, 1e-12);
        count_tile(r, tile);
        elapsed += dt;
        r.path_length = elapsed;
        r.end_point = b;
        if (tie) {
            r.status = Termination::Singular;
            r.singular_vertex = b;
            return r;
        }
        X = nX;
        Y = nY;
        family_index(cell, bf) += gsigned > 0 ? 1 : -1;
        refract_lattice_dir(bf, dm, dn);
        time_at.push_back(elapsed);

        Tile nt = tile_of(cell);
        anchor_at.push_back(nt.anchor);
        if (opt.detect_recurrence) {
            std::array<i128, 5> key{i128(int(nt.kind)), X - Q * nt.anchor.m, Y - Q * nt.anchor.n, dm, dn};
            auto [it, inserted] = seen.emplace(key, step);
            if (!inserted) {
                int64_t s0 = it->second;
                r.period_start = s0;
                r.combinatorial_period = step - s0;
                r.period_time = elapsed - time_at[s0];
                r.shift = nt.anchor - anchor_at[s0];
                r.status = r.shift.is_zero() ? Termination::Periodic : Termination::DriftPeriodic;
                return r;
            }
        }
        if (opt.horizon > 0 && elapsed >= opt.horizon) break;
    }
    r.status = Termination::Horizon;
    return r;
}

TraceResult trace_float(Vec2 start, double theta, const TraceOptions& opt) {
    return trace_float(start, unit(theta), opt);
}

TraceResult trace_float(Vec2 start, Vec2 dir, const TraceOptions& opt) {
    double n = norm(dir);
    if (n == 0) throw std::invalid_argument("trace_float: zero direction");
    dir = (1.0 / n) * dir;
    TraceResult r;
    r.mode = Mode::Float;
    r.start_point = r.end_point = start;
    Vec2 q = to_lattice_coords(start);
    Vec2 d = to_lattice_coords(dir);
    Cell cell;
    try {
        cell = cell_from_lattice(q, opt.tol, d, true);
    } catch (const VertexError& e) {
        r.status = Termination::Singular;
        r.singular_vertex = e.where;
        return r;
    }
    FloatWalker w{q.x, q.y, d.x, d.y, cell, opt.tol};

    // Quantized recurrence keys; a hit is confirmed against the stored state.
    const double quantum = 1e-7;
    struct Stored {
        int64_t step;
        Vec2 rel, dir;
    };
    std::unordered_map<std::array<i128, 5>, Stored, I128Hash> seen;
    std::vector<double> time_at{0.0};
    std::vector<LatticeVec> anchor_at{LatticeVec{}};
    double elapsed = 0;
    r.lattice_points.push_back(q);

    for (int64_t step = 1; step <= opt.max_steps; ++step) {
        Tile tile = tile_of(w.cell);
        Vec2 a = from_lattice_coords({w.x, w.y});
        Vec2 cdir = cart_dir(w.dx, w.dy);
        Vec2 ldir{w.dx, w.dy};
        double dt;
        int fam = 0;
        try {
            dt = w.step(fam);
        } catch (const VertexError& e) {
            r.status = Termination::Singular;
            r.singular_vertex = e.where;
            return r;
        }
        Vec2 b = from_lattice_coords({w.x, w.y});
        if (opt.record_segments) {
            r.segments.push_back({a, b, tile, cdir, elapsed, elapsed + dt});
            r.lattice_points.push_back({w.x, w.y});
            r.lattice_dirs.push_back(ldir);
            r.crossed_family.push_back(fam);
        }
        set_sign_if_hexagon(r, tile, a, cdir, 1e-12);
        count_tile(r, tile);
        elapsed += dt;
        r.path_length = elapsed;
        r.end_point = b;
        time_at.push_back(elapsed);
        Tile nt = tile_of(w.cell);
        anchor_at.push_back(nt.anchor);
        if (opt.detect_recurrence) {
            Vec2 rel{w.x - double(nt.anchor.m), w.y - double(nt.anchor.n)};
            auto qz = [&](double v) { return i128(std::llround(v / quantum)); };
            std::array<i128, 5> key{i128(int(nt.kind)), qz(rel.x), qz(rel.y), qz(w.dx), qz(w.dy)};
            auto it = seen.find(key);
            if (it != seen.end()) {
                const Stored& s = it->second;
                double err = std::max({std::abs(s.rel.x - rel.x), std::abs(s.rel.y - rel.y),
                                       std::abs(s.dir.x - w.dx), std::abs(s.dir.y - w.dy)});
                if (err <= std::max(opt.tol, 1e-9) * 100) {
                    int64_t s0 = s.step;
                    r.period_start = s0;
                    r.combinatorial_period = step - s0;
                    r.period_time = elapsed - time_at[s0];
                    r.shift = nt.anchor - anchor_at[s0];
                    r.status = r.shift.is_zero() ? Termination::Periodic : Termination::DriftPeriodic;
                    return r;
                }
            } else {
                seen.emplace(key, Stored{step, rel, {w.dx, w.dy}});
            }
        }
        if (opt.horizon > 0 && elapsed >= opt.horizon) break;
    }
    r.status = Termination::Horizon;
    return r;
}

}  // namespace trihex
