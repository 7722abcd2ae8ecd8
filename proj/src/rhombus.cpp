#include "trihex/rhombus.hpp"

#include <cmath>
#include <random>

namespace trihex {

namespace {

int mod3(int k) { return ((k % 3) + 3) % 3; }

const std::array<Vec2, 4> kLocalVertices{Vec2{0, 0}, Vec2{0.5, -0.5 * kSqrt3}, Vec2{1, 0}, Vec2{0.5, 0.5 * kSqrt3}};

// Gluing translations in the local frame: edge 3 onto edge 1, edge 4 onto edge 2.
const Vec2 kShift3{-0.5, -0.5 * kSqrt3};
const Vec2 kShift4{0.5, -0.5 * kSqrt3};

struct LocalStep {
    RhombusCoord next;
    int exit_edge;
    Vec2 exit_local, entry_local;
    double time;
};

LocalStep local_exit(const RhombusCoord& r, Vec2 p, double theta) {
    Vec2 d{std::cos(theta), std::sin(theta)};
    double best = INFINITY;
    int edge = 0;
    for (int k = 1; k <= 4; ++k) {
        Vec2 a = kLocalVertices[(k - 1) % 4], b = kLocalVertices[k % 4];
        Vec2 e = b - a;
        double den = cross(d, e);
        if (std::abs(den) < 1e-15) continue;
        double t = cross(a - p, e) / den;
        double u = cross(a - p, d) / den;
        if (t > 1e-12 && u >= -1e-12 && u <= 1 + 1e-12 && t < best) {
            best = t;
            edge = k;
        }
    }
    if (edge != 3 && edge != 4) throw std::logic_error("exit_map: ray leaves through edge " + std::to_string(edge));
    Vec2 q = p + best * d;
    for (Vec2 v : kLocalVertices)
        if (norm(q - v) < 1e-12) throw VertexError(from_local(r, q));
    LocalStep s;
    s.exit_edge = edge;
    s.exit_local = q;
    s.time = best;
    if (edge == 3) {
        s.next = {mod3(r.i - 1), r.c + 2 * basis_vector(r.i)};
        s.entry_local = q + kShift3;
    } else {
        s.next = {mod3(r.i - 1), r.c - 2 * basis_vector(r.i - 1)};
        s.entry_local = q + kShift4;
    }
    return s;
}

// From an entry point on edge 1 or 2 to the short diagonal.
double to_diagonal(Vec2 entry, double theta, double& time) {
    time = -entry.y / std::sin(theta);
    return entry.x + time * std::cos(theta);
}

double physical_angle(int i, double theta) { return theta + 2 * kPi / 3 * i; }

}  // namespace

std::string RhombusCoord::to_string() const { return "R" + std::to_string(i) + c.to_string(); }

std::array<Vec2, 4> rhombus_vertices(const RhombusCoord& r) {
    std::array<Vec2, 4> v;
    for (int k = 0; k < 4; ++k) v[k] = from_local(r, kLocalVertices[k]);
    return v;
}

Vec2 to_local(const RhombusCoord& r, Vec2 p) { return rotate(p - r.c.to_vec2(), -2 * kPi / 3 * r.i); }

Vec2 from_local(const RhombusCoord& r, Vec2 q) { return r.c.to_vec2() + rotate(q, 2 * kPi / 3 * r.i); }

RhombusCoord rhombus_of(Vec2 p) {
    Tile t = locate(p);
    if (t.kind != TileKind::Hexagon) throw std::invalid_argument("rhombus_of: point not in a hexagon");
    Vec2 q = p - t.center();
    if (norm(q) < 1e-12) throw std::invalid_argument("rhombus_of: hexagon center is singular");
    double a = std::atan2(q.y, q.x);
    int i = int(std::floor((a + kPi / 3) / (2 * kPi / 3) + 1e-12));
    return {mod3(i), t.anchor};
}

ExitStep exit_map(const RhombusCoord& r, Vec2 p_local, double theta) {
    LocalStep s = local_exit(r, p_local, theta);
    ExitStep e;
    e.next = s.next;
    e.exit_edge = s.exit_edge;
    e.entry_edge = s.exit_edge == 3 ? 1 : 2;
    e.exit_local = s.exit_local;
    e.entry_local = s.entry_local;
    e.entry = from_local(s.next, s.entry_local);
    e.time = s.time;
    return e;
}

RayState section_ray(const SectionPoint& s, double theta) {
    RayState st;
    st.pos = from_local(s.rhombus, {s.x, 0});
    st.dir = unit(physical_angle(s.rhombus.i, theta));
    st.tile = Tile{TileKind::Hexagon, s.rhombus.c};
    st.sign = Orientation::Plus;
    return st;
}

CocycleStep section_return(const SectionPoint& s, double theta) {
    LocalStep e = local_exit(s.rhombus, {s.x, 0}, theta);
    double t2 = 0;
    double x = to_diagonal(e.entry_local, theta, t2);
    CocycleStep out;
    out.next = {e.next, x};
    out.deck = e.next.c - s.rhombus.c;
    out.exit_edge = e.exit_edge;
    out.time_surface = e.time + t2;

    // Refracted trajectory: out of the hexagon, across one triangle, into the next hexagon's diagonal.
    RayState st = section_ray(s, theta);
    RayState a = refract_step(st);
    RayState b = refract_step(a);
    if (b.tile.kind != TileKind::Hexagon) throw std::logic_error("section_return: expected a hexagon after one triangle");
    Vec2 c = b.tile.center();
    Vec2 v = basis_cartesian(e.next.i);
    double t3 = cross(c - b.pos, v) / cross(b.dir, v);
    out.time_tiling = norm(a.pos - st.pos) + norm(b.pos - a.pos) + t3;
    return out;
}

std::vector<SectionPoint> section_orbit(const SectionPoint& s, double theta, int64_t n) {
    std::vector<SectionPoint> out{s};
    SectionPoint cur = s;
    for (int64_t k = 0; k < n; ++k) {
        LocalStep e = local_exit(cur.rhombus, {cur.x, 0}, theta);
        double t2 = 0;
        cur = {e.next, to_diagonal(e.entry_local, theta, t2)};
        out.push_back(cur);
    }
    return out;
}

std::vector<RhombusCoord> itinerary(const SectionPoint& s, double theta, int64_t n) {
    std::vector<RhombusCoord> out;
    for (const SectionPoint& p : section_orbit(s, theta, n)) out.push_back(p.rhombus);
    return out;
}

std::vector<DiagonalHit> tracer_diagonal_hits(const TraceResult& tr) {
    std::vector<DiagonalHit> out;
    for (const Segment& seg : tr.segments) {
        if (seg.tile.kind != TileKind::Hexagon) continue;
        double phi = std::atan2(seg.dir.y, seg.dir.x);
        int i = -1;
        for (int k = 0; k < 3; ++k) {
            double rel = normalize_angle(phi - 2 * kPi / 3 * k);
            if (rel >= kPi / 3 - 1e-12 && rel <= 2 * kPi / 3 + 1e-12) i = k;
        }
        if (i < 0) throw std::invalid_argument("tracer_itinerary: hexagon direction outside the standardized sector");
        Vec2 c = seg.tile.center(), v = basis_cartesian(i), d = seg.end - seg.start;
        double den = cross(v, d);
        double s = cross(seg.start - c, d) / den;
        double t = cross(seg.start - c, v) / den;
        if (t < -1e-9 || t > 1 + 1e-9) continue;  // partial segment that misses the diagonal
        out.push_back({{{i, seg.tile.anchor}, s}, seg.t_start + t * (seg.t_end - seg.t_start)});
    }
    return out;
}

std::vector<SectionPoint> tracer_itinerary(const TraceResult& tr) {
    std::vector<SectionPoint> out;
    for (const DiagonalHit& h : tracer_diagonal_hits(tr)) out.push_back(h.point);
    return out;
}

RotationEstimate measure_rotation(double theta, int samples, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(1e-3, 1 - 1e-3);
    double lo = INFINITY, hi = -INFINITY, sum = 0;
    for (int k = 0; k < samples; ++k) {
        SectionPoint s{{0, {}}, u(rng)};
        double t2 = 0;
        LocalStep e = local_exit(s.rhombus, {s.x, 0}, theta);
        double x = to_diagonal(e.entry_local, theta, t2);
        double r = x - s.x;
        r -= std::floor(r);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        sum += r;
    }
    return {samples > 0 ? sum / samples : 0, samples > 0 ? hi - lo : 0};
}

}  // namespace trihex
