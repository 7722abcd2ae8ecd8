#include "trihex/trace_analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace trihex {

namespace {

// Reflection across the crossed line, as an affine map on lattice coordinates.
// L is the value of the family coordinate on the line (scaled in exact mode).
template <class T>
struct Affine {
    std::array<int64_t, 4> m{1, 0, 0, 1};
    std::array<T, 2> t{T(0), T(0)};

    std::array<T, 2> apply(T x, T y) const {
        return {T(m[0]) * x + T(m[1]) * y + t[0], T(m[2]) * x + T(m[3]) * y + t[1]};
    }
    // this ∘ other
    Affine compose(const Affine& o) const {
        Affine r;
        r.m = {m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
               m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]};
        auto tt = apply(o.t[0], o.t[1]);
        r.t = tt;
        return r;
    }
};

template <class T>
Affine<T> reflection(int family, T L) {
    Affine<T> a;
    if (family == 0) {
        a.m = {-1, 0, -1, 1};
        a.t = {2 * L, L};
    } else if (family == 1) {
        a.m = {1, -1, 0, -1};
        a.t = {L, 2 * L};
    } else {
        a.m = {0, 1, 1, 0};
        a.t = {L, -L};
    }
    return a;
}

template <class T>
T family_value(int family, T x, T y) {
    return family == 0 ? x : (family == 1 ? y : x - y);
}

double angle_residue(double a, double period) {
    double r = std::fmod(a, period);
    if (r < 0) r += period;
    return std::min(r, period - r);
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 d = b - a;
    double L2 = dot(d, d);
    double t = L2 > 0 ? std::clamp(dot(p - a, d) / L2, 0.0, 1.0) : 0.0;
    return norm(p - (a + t * d));
}

Vec2 line_intersection(Vec2 p, Vec2 r, Vec2 q, Vec2 s) {
    double t = cross(q - p, s) / cross(r, s);
    return p + t * r;
}

// Signed distance of p to the polygon's boundary edge i, positive inside (CCW polygon).
double edge_depth(const std::vector<Vec2>& poly, size_t i, Vec2 p) {
    Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
    Vec2 d = b - a;
    return cross(d, p - a) / norm(d);
}

// Does the open segment meet the open convex polygon? Clips the parameter range by each edge.
bool segment_meets_polygon(const std::vector<Vec2>& poly, Vec2 a, Vec2 b) {
    double lo = 0, hi = 1;
    for (size_t i = 0; i < poly.size(); ++i) {
        double da = edge_depth(poly, i, a), db = edge_depth(poly, i, b);
        if (da <= 0 && db <= 0) return false;
        if (da <= 0 || db <= 0) {
            double t = da / (da - db);
            if (da <= 0)
                lo = std::max(lo, t);
            else
                hi = std::min(hi, t);
        }
        if (lo >= hi) return false;
    }
    return hi - lo > 1e-12;
}

double segment_polygon_distance(const std::vector<Vec2>& poly, Vec2 a, Vec2 b) {
    if (segment_meets_polygon(poly, a, b)) return 0;
    double d = 1e300;
    for (size_t i = 0; i < poly.size(); ++i) {
        Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
        d = std::min({d, point_segment_distance(a, p, q), point_segment_distance(b, p, q),
                      point_segment_distance(p, a, b)});
    }
    return d;
}

Vec2 anchor0_center(TileKind k) { return Tile{k, {}}.center(); }

struct ChordCheck {
    ExcludedRegion reg;
    ExcludedCheck out;

    void add(Vec2 a, Vec2 b) {
        if (reg.polygon.empty()) return;
        Vec2 mid = 0.5 * (a + b);
        Tile t;
        try {
            t = locate(mid);
        } catch (const VertexError&) {
            return;
        }
        if (t.kind != reg.kind) return;
        Vec2 off = t.center() - anchor0_center(reg.kind);
        Vec2 la = a - off, lb = b - off;
        double d = segment_polygon_distance(reg.polygon, la, lb);
        out.min_distance = std::min(out.min_distance, d);
        if (segment_meets_polygon(reg.polygon, la, lb)) {
            out.clean = false;
            ++out.violations;
        }
    }
};

}  // namespace

FoldResult fold(const TraceResult& tr) {
    FoldResult res;
    size_t n = tr.crossed_family.size();
    if (tr.mode == Mode::Exact && tr.exact_points.size() == n + 1 && !tr.exact_dirs.empty()) {
        res.exact = true;
        const i128 Q = tr.scale;
        Affine<i128> F;
        std::vector<std::array<i128, 2>> pts;
        pts.push_back({tr.exact_points[0].x, tr.exact_points[0].y});
        for (size_t k = 0; k < n; ++k) {
            const ScaledPoint& p = tr.exact_points[k + 1];
            pts.push_back(F.apply(p.x, p.y));
            F = F.compose(reflection<i128>(tr.crossed_family[k], family_value<i128>(tr.crossed_family[k], p.x, p.y)));
        }
        const LatticeVec d0 = tr.exact_dirs[0];
        Vec2 dc = d0.to_vec2();
        dc = (1.0 / norm(dc)) * dc;
        Vec2 p0 = from_lattice_coords({double(pts[0][0]) / double(Q), double(pts[0][1]) / double(Q)});
        for (auto& p : pts) {
            Vec2 c = from_lattice_coords({double(p[0]) / double(Q), double(p[1]) / double(Q)});
            res.points.push_back(c);
            i128 cr = (p[0] - pts[0][0]) * d0.n - (p[1] - pts[0][1]) * d0.m;
            if (cr != 0) res.residual = std::max(res.residual, std::abs(cross(c - p0, dc)));
        }
        return res;
    }
    if (tr.lattice_points.size() != n + 1) throw std::invalid_argument("fold: trace has no recorded segments");
    Affine<double> F;
    std::vector<std::array<double, 2>> pts;
    pts.push_back({tr.lattice_points[0].x, tr.lattice_points[0].y});
    for (size_t k = 0; k < n; ++k) {
        Vec2 p = tr.lattice_points[k + 1];
        pts.push_back(F.apply(p.x, p.y));
        int f = tr.crossed_family[k];
        double L = std::round(family_value<double>(f, p.x, p.y));
        F = F.compose(reflection<double>(f, L));
    }
    Vec2 dc = n > 0 ? tr.segments[0].dir : Vec2{1, 0};
    Vec2 p0 = from_lattice_coords({pts[0][0], pts[0][1]});
    for (auto& p : pts) {
        Vec2 c = from_lattice_coords({p[0], p[1]});
        res.points.push_back(c);
        res.residual = std::max(res.residual, std::abs(cross(c - p0, dc)));
    }
    return res;
}

double drift_rate(const TraceResult& tr) {
    if (tr.path_length <= 0) return 0;
    return norm(tr.end_point - tr.start_point) / tr.path_length;
}

ExcludedRegion excluded_region(double theta_std) {
    ExcludedRegion reg;
    if (std::abs(theta_std - kPi / 2) < 1e-12) return reg;
    bool down = theta_std > kPi / 2;
    double th = down ? kPi - theta_std : theta_std;
    reg.kind = down ? TileKind::TriangleDown : TileKind::TriangleUp;
    const Vec2 T0 = anchor0_center(TileKind::TriangleUp);
    // Singular chord from the apex to the foot on the opposite side, and its two rotations.
    Vec2 A{0, kSqrt3};
    Vec2 F{0.5 * kSqrt3 / std::tan(th), 0.5 * kSqrt3};
    std::array<Vec2, 3> P, D;
    for (int k = 0; k < 3; ++k) {
        double rot = 2 * kPi / 3 * k;
        P[k] = T0 + rotate(A - T0, rot);
        D[k] = rotate(F - A, rot);
    }
    std::vector<Vec2> poly;
    for (int k = 0; k < 3; ++k) poly.push_back(line_intersection(P[k], D[k], P[(k + 1) % 3], D[(k + 1) % 3]));
    // down case: mirror image across the horizontal axis of the up region for pi - theta'
    if (down)
        for (auto& v : poly) v = {v.x, -v.y};
    if (cross(poly[1] - poly[0], poly[2] - poly[0]) < 0) std::swap(poly[1], poly[2]);
    reg.polygon = poly;
    return reg;
}

bool in_excluded_region(const ExcludedRegion& reg, Vec2 p, double margin) {
    if (reg.polygon.empty()) return false;
    Tile t;
    try {
        t = locate(p);
    } catch (const VertexError&) {
        return false;
    }
    if (t.kind != reg.kind) return false;
    Vec2 q = p - (t.center() - anchor0_center(reg.kind));
    for (size_t i = 0; i < reg.polygon.size(); ++i)
        if (edge_depth(reg.polygon, i, q) <= margin) return false;
    return true;
}

ExcludedCheck excluded_triangle_check(const TraceResult& tr, double theta_std) {
    ChordCheck cc{excluded_region(theta_std), {}};
    cc.out.kind = cc.reg.kind;
    for (const Segment& s : tr.segments) cc.add(s.start, s.end);
    return cc.out;
}

ExcludedCheck excluded_triangle_check(const TraceResult& tr, double theta, Orientation sign) {
    Standardized st = standardize_direction(theta, sign);
    ChordCheck cc{excluded_region(st.theta), {}};
    for (const Segment& s : tr.segments) cc.add(st.iso.apply(s.start), st.iso.apply(s.end));
    // odd rotations by pi/3 exchange up and down triangles; the reflection keeps them
    bool swap = (((st.iso.rotation % 2) + 2) % 2) == 1;
    cc.out.kind = cc.reg.kind;
    if (swap) cc.out.kind = cc.reg.kind == TileKind::TriangleUp ? TileKind::TriangleDown : TileKind::TriangleUp;
    return cc.out;
}

namespace {

using IPt = std::array<i128, 2>;

IPt rot_about(const IPt& p, const IPt& c, int sixths) {
    i128 x = p[0] - c[0], y = p[1] - c[1];
    for (int k = 0; k < sixths; ++k) {
        i128 nx = x - y, ny = x;
        x = nx;
        y = ny;
    }
    return {x + c[0], y + c[1]};
}

using ISeg = std::pair<IPt, IPt>;

ISeg normalized(IPt a, IPt b) { return a < b ? ISeg{a, b} : ISeg{b, a}; }

bool invariant_exact(const std::vector<IPt>& cycle, const IPt& c, int sixths) {
    std::set<ISeg> segs;
    size_t n = cycle.size();
    for (size_t k = 0; k < n; ++k) segs.insert(normalized(cycle[k], cycle[(k + 1) % n]));
    for (const ISeg& s : segs)
        if (!segs.count(normalized(rot_about(s.first, c, sixths), rot_about(s.second, c, sixths)))) return false;
    return true;
}

Vec2 rot_about(Vec2 p, Vec2 c, int sixths) {
    double x = p.x - c.x, y = p.y - c.y;
    for (int k = 0; k < sixths; ++k) {
        double nx = x - y, ny = x;
        x = nx;
        y = ny;
    }
    return {x + c.x, y + c.y};
}

bool invariant_float(const std::vector<Vec2>& cycle, Vec2 c, int sixths, double tol) {
    size_t n = cycle.size();
    auto close = [&](Vec2 p, Vec2 q) { return std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol; };
    for (size_t k = 0; k < n; ++k) {
        Vec2 a = rot_about(cycle[k], c, sixths), b = rot_about(cycle[(k + 1) % n], c, sixths);
        bool found = false;
        for (size_t j = 0; j < n && !found; ++j) {
            Vec2 p = cycle[j], q = cycle[(j + 1) % n];
            found = (close(a, p) && close(b, q)) || (close(a, q) && close(b, p));
        }
        if (!found) return false;
    }
    return true;
}

bool is_translation_generator(LatticeVec s) {
    for (int i = 0; i < 3; ++i)
        if (s == 2 * basis_vector(i) || s == -2 * basis_vector(i)) return true;
    return false;
}

// 3c for a rotation center c, in lattice coordinates; classifies hexagon (0) / triangle (1) / none (-1).
int center_kind(i128 u, i128 v) {
    auto mod6 = [](i128 a) { return int(((a % 6) + 6) % 6); };
    if (mod6(u) == 0 && mod6(v) == 0) return 0;
    if ((mod6(u - 2) == 0 && mod6(v + 2) == 0) || (mod6(u + 2) == 0 && mod6(v - 2) == 0)) return 1;
    return -1;
}

}  // namespace

SymmetryReport symmetry_check(const TraceResult& tr) {
    SymmetryReport rep;
    if (tr.status == Termination::DriftPeriodic) {
        if (is_translation_generator(tr.shift)) {
            rep.kind = SymmetryKind::Translation;
            rep.shift = tr.shift;
        }
        return rep;
    }
    if (tr.status != Termination::Periodic || tr.combinatorial_period <= 0) return rep;
    const size_t s0 = size_t(tr.period_start), P = size_t(tr.combinatorial_period);

    if (tr.mode == Mode::Exact && tr.exact_points.size() >= s0 + P) {
        const i128 Q = tr.scale, N = i128(P);
        i128 sx = 0, sy = 0;
        for (size_t k = s0; k < s0 + P; ++k) {
            sx += tr.exact_points[k].x;
            sy += tr.exact_points[k].y;
        }
        // work on the grid 1/(3NQ) so the centroid is a grid point
        if ((3 * sx) % (N * Q) != 0 || (3 * sy) % (N * Q) != 0) return rep;
        i128 u = 3 * sx / (N * Q), v = 3 * sy / (N * Q);
        int ck = center_kind(u, v);
        if (ck < 0) return rep;
        std::vector<IPt> cyc;
        for (size_t k = s0; k < s0 + P; ++k) cyc.push_back({3 * N * tr.exact_points[k].x, 3 * N * tr.exact_points[k].y});
        IPt c{3 * sx, 3 * sy};
        if (!invariant_exact(cyc, c, 2)) return rep;
        rep.kind = SymmetryKind::Order3;
        rep.center = from_lattice_coords({double(u) / 3, double(v) / 3});
        rep.center_is_hexagon = ck == 0;
        rep.order6 = invariant_exact(cyc, c, 1);
        return rep;
    }

    if (tr.lattice_points.size() < s0 + P) return rep;
    Vec2 sum{};
    std::vector<Vec2> cyc(tr.lattice_points.begin() + s0, tr.lattice_points.begin() + s0 + P);
    for (Vec2 p : cyc) sum = sum + p;
    Vec2 c = (1.0 / double(P)) * sum;
    double u = std::round(3 * c.x), v = std::round(3 * c.y);
    if (std::abs(3 * c.x - u) > 1e-6 || std::abs(3 * c.y - v) > 1e-6) return rep;
    int ck = center_kind(i128(u), i128(v));
    if (ck < 0) return rep;
    Vec2 cc{u / 3, v / 3};
    if (!invariant_float(cyc, cc, 2, 1e-6)) return rep;
    rep.kind = SymmetryKind::Order3;
    rep.center = from_lattice_coords(cc);
    rep.center_is_hexagon = ck == 0;
    rep.order6 = invariant_float(cyc, cc, 1, 1e-6);
    return rep;
}

double direction_set_error(const TraceResult& tr) {
    if (tr.segments.empty()) return 0;
    auto ang = [](Vec2 d) { return std::atan2(d.y, d.x); };
    const Segment& s0 = tr.segments[0];
    double phi0 = ang(s0.dir);
    double theta = s0.tile.kind == TileKind::Hexagon ? phi0 : kPi / 3 - phi0;
    double err = 0;
    for (const Segment& s : tr.segments) {
        double phi = ang(s.dir);
        double e = s.tile.kind == TileKind::Hexagon ? angle_residue(phi - theta, 2 * kPi / 3)
                                                    : angle_residue(phi + theta - kPi / 3, 2 * kPi / 3);
        err = std::max(err, e);
    }
    return err;
}

bool orientation_constant(const TraceResult& tr) {
    int seen = 0;
    for (const Segment& s : tr.segments) {
        if (s.tile.kind != TileKind::Hexagon) continue;
        double cr = cross(0.5 * (s.start + s.end) - s.tile.center(), s.dir);
        int sg = cr > 0 ? 1 : -1;
        if (seen == 0)
            seen = sg;
        else if (sg != seen)
            return false;
    }
    return true;
}

}  // namespace trihex
