#include "trihex/hyperbolic.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace trihex {

namespace {

const double kCuspX = kSqrt3 / 3;
const double kLowLine = 1 / kSqrt3;

bool is_inf(double x) { return std::isinf(x); }

// Generalized circle A(x^2+y^2) + Bx + C = 0.
struct Circle {
    double A, B, C;
};

Circle circle_of(double u, double w) {
    if (is_inf(w)) return {0, 1, -u};
    if (is_inf(u)) return {0, 1, -w};
    return {1, -(u + w), u * w};
}

// Fixed set of an orientation-reversing involution with a = -d.
Circle circle_of(const Mat2& m) { return {m.c, -2 * m.a, -m.b}; }

std::optional<UHPoint> intersect(Circle g, Circle h) {
    const double eps = 1e-15;
    if (std::abs(g.A) < eps && std::abs(h.A) < eps) return std::nullopt;
    if (std::abs(g.A) < eps) std::swap(g, h);
    double B1 = g.B / g.A, C1 = g.C / g.A;
    double x;
    if (std::abs(h.A) < eps) {
        x = -h.C / h.B;
    } else {
        double B2 = h.B / h.A, C2 = h.C / h.A;
        if (std::abs(B1 - B2) < eps) return std::nullopt;
        x = -(C1 - C2) / (B1 - B2);
    }
    double y2 = -(x * x + B1 * x + C1);
    if (y2 <= 0) return std::nullopt;
    return UHPoint{x, std::sqrt(y2)};
}

// Signed position along the oriented geodesic from u to w; increases toward w.
double position(UHPoint p, double u, double w) {
    std::complex<double> z = p.z();
    if (is_inf(w)) return std::log(std::abs(z - u));
    if (is_inf(u)) return -std::log(std::abs(z - w));
    return std::log(std::abs((z - u) / (z - w)));
}

// Highest point of the geodesic arc from p to q.
double arc_max_im(UHPoint p, UHPoint q, double u, double w) {
    double top = std::max(p.im, q.im);
    if (is_inf(u) || is_inf(w)) return top;
    double cx = (u + w) / 2;
    if ((p.re - cx) * (q.re - cx) < 0) top = std::max(top, std::abs(w - u) / 2);
    return top;
}

// Points along the arc, including both ends.
void sample_arc(UHPoint p, UHPoint q, double u, double w, double t0, int word_len, int count,
                std::vector<ExcursionSample>& out) {
    double s0 = position(p, u, w);
    if (is_inf(u) || is_inf(w)) {
        for (int k = 0; k <= count; ++k) {
            double f = double(k) / count;
            double im = p.im * std::pow(q.im / p.im, f);
            out.push_back({t0 + std::abs(std::log(im / p.im)), im, word_len});
        }
        return;
    }
    double cx = (u + w) / 2, r = std::abs(w - u) / 2;
    double a = std::atan2(p.im, p.re - cx), b = std::atan2(q.im, q.re - cx);
    for (int k = 0; k <= count; ++k) {
        double phi = a + (b - a) * k / count;
        UHPoint z{cx + r * std::cos(phi), r * std::sin(phi)};
        out.push_back({t0 + std::abs(position(z, u, w) - s0), z.im, word_len});
    }
}

bool near(double a, double b, double tol) {
    if (is_inf(a) || is_inf(b)) return is_inf(a) && is_inf(b);
    return std::abs(a - b) < tol;
}

}  // namespace

Mat2 Mat2::from(const QMat2& m) { return {m.a.to_double(), m.b.to_double(), m.c.to_double(), m.d.to_double()}; }

UHPoint act(const Mat2& m, UHPoint p) {
    std::complex<double> z = p.z();
    if (m.det() < 0) z = std::conj(z);
    std::complex<double> r = (m.d * z - m.b) / (m.a - m.c * z);
    return {r.real(), r.imag()};
}

double act_boundary(const Mat2& m, double x) {
    if (is_inf(x)) return m.c == 0 ? INFINITY : -m.d / m.c;
    double den = m.a - m.c * x;
    if (den == 0) return INFINITY;
    return (m.d * x - m.b) / den;
}

UHPoint basepoint(const Mat2& m) {
    std::complex<double> r = std::complex<double>(-m.b, m.d) / std::complex<double>(m.a, -m.c);
    return {r.real(), r.imag()};
}

Mat2 coset_of(UHPoint z) {
    double s = std::sqrt(z.im);
    return {1 / s, -z.re / s, 0, s};
}

GeodesicSegment geodesic_from_angle(double theta) {
    if (!(theta > 0 && theta < kPi)) throw std::invalid_argument("geodesic_from_angle: theta must lie in (0, pi)");
    GeodesicSegment g;
    g.start = {0, 1};
    double e = std::abs(std::cos(theta) / std::sin(theta));
    if (e < 1e-15) {
        g.kind = GeodesicSegment::Kind::Vertical;
        g.x = 0;
        g.end = 0;
        return g;
    }
    g.kind = GeodesicSegment::Kind::Semicircle;
    g.x = (e * e - 1) / (2 * e);
    g.radius = std::hypot(g.x, 1.0);
    g.end = e;
    return g;
}

std::array<Wall, 3> delta_walls() {
    auto gens = generators();
    const IntMat2 R = gens.at("R");
    const std::array<std::pair<const char*, IntMat2>, 3> src{
        {{"R", R}, {"RP0", gens.at("RP0")}, {"P1^-1RP0", gens.at("P1^-1RP0")}}};
    std::array<Wall, 3> out;
    for (int k = 0; k < 3; ++k) {
        Wall& w = out[k];
        w.name = src[k].first;
        w.reflection = Mat2::from(to_standard_basis(R * src[k].second * R));
        Circle c = circle_of(w.reflection);
        if (std::abs(c.A) < 1e-15) {
            w.fixed.kind = GeodesicSegment::Kind::Vertical;
            w.fixed.x = -c.C / c.B;
            w.fixed.end = INFINITY;
            w.other_end = w.fixed.x;
        } else {
            w.fixed.kind = GeodesicSegment::Kind::Semicircle;
            w.fixed.x = -c.B / (2 * c.A);
            w.fixed.radius = std::sqrt(w.fixed.x * w.fixed.x - c.C / c.A);
            w.fixed.end = w.fixed.x + w.fixed.radius;
            w.other_end = w.fixed.x - w.fixed.radius;
        }
    }
    return out;
}

UHPoint delta_corner() { return {0, 1.0 / 3}; }

bool in_delta(UHPoint z, double tol) {
    if (z.im <= 0) return false;
    const double c = kSqrt3 / 9, r = 2 * kSqrt3 / 9;
    return z.re >= -tol && z.re <= kCuspX + tol && std::hypot(z.re - c, z.im) >= r - tol;
}

std::string to_string(CuspLimit c) { return c == CuspLimit::AtInfinity ? "infinity" : "sqrt3/3"; }

ExcursionReport billiard_in_delta(double theta, double horizon, int max_hits) {
    GeodesicSegment g = geodesic_from_angle(theta);
    static const std::array<Wall, 3> walls = delta_walls();
    ExcursionReport rep;
    rep.theta = theta;

    UHPoint p = g.start;
    double w = g.end;
    double u = g.kind == GeodesicSegment::Kind::Vertical ? INFINITY : 2 * g.x - g.end;
    int last = 0;  // i lies on the wall x = 0
    double t = 0;
    rep.max_im = p.im;
    rep.samples.push_back({0, p.im, 0});

    struct State {
        int wall;
        UHPoint q;
        double w;
        int index;
        double t;
    };
    std::map<std::tuple<int, int64_t, int64_t>, std::vector<State>> seen;
    std::vector<double> hit_max;  // highest point on each segment, for the period summary
    auto key = [](int j, UHPoint q, int64_t dx, int64_t dy) {
        return std::make_tuple(j, int64_t(std::floor(q.re * 1e7)) + dx, int64_t(std::floor(q.im * 1e7)) + dy);
    };

    const Mat2 through_corner = walls[0].reflection * walls[2].reflection * walls[0].reflection;
    const UHPoint corner = delta_corner();

    while (rep.hits < max_hits && t < horizon) {
        if (near(w, kCuspX, 1e-9)) {
            rep.cusp_limit = CuspLimit::AtSqrt3Over3;
            break;
        }
        if (is_inf(w) || std::abs(w) > 1e9) {
            rep.cusp_limit = CuspLimit::AtInfinity;
            break;
        }
        Circle gc = circle_of(u, w);
        double s0 = position(p, u, w);
        double best = INFINITY;
        int bj = -1;
        UHPoint bq;
        for (int j = 0; j < 3; ++j) {
            if (j == last) continue;
            auto q = intersect(gc, circle_of(walls[j].reflection));
            if (!q) continue;
            double dt = position(*q, u, w) - s0;
            if (dt > 1e-12 && dt < best) {
                best = dt;
                bj = j;
                bq = *q;
            }
        }
        if (bj < 0) throw std::logic_error("billiard_in_delta: ray left the triangle away from a cusp");

        double seg_max = arc_max_im(p, bq, u, w);
        if (seg_max > kLowLine && (rep.hits == 0 || p.im <= kLowLine)) ++rep.crossings_above;
        rep.max_im = std::max(rep.max_im, seg_max);
        hit_max.push_back(seg_max);
        sample_arc(p, bq, u, w, t, rep.hits, 8, rep.samples);
        t += best;

        if (std::hypot(bq.re - corner.re, bq.im - corner.im) < 1e-9) {
            // Only the ray running along the wall x = 0 is continued through the corner.
            bool along_wall = is_inf(u) && std::abs(w) < 1e-12;
            if (!along_wall) {
                rep.singular = true;
                break;
            }
            p = corner;
            u = act_boundary(through_corner, u);
            w = act_boundary(through_corner, w);
            last = -1;
            ++rep.hits;
            rep.word.push_back(0);
            rep.word.push_back(2);
            rep.word.push_back(0);
            continue;
        }

        const Mat2& m = walls[bj].reflection;
        p = bq;
        u = act_boundary(m, u);
        w = act_boundary(m, w);
        last = bj;
        ++rep.hits;
        rep.word.push_back(bj);

        State st{bj, bq, w, rep.hits, t};
        bool closed = false;
        for (int64_t dx = -1; dx <= 1 && !closed; ++dx)
            for (int64_t dy = -1; dy <= 1 && !closed; ++dy) {
                auto it = seen.find(key(bj, bq, dx, dy));
                if (it == seen.end()) continue;
                for (const State& o : it->second) {
                    if (std::abs(o.q.re - bq.re) < 1e-9 && std::abs(o.q.im - bq.im) < 1e-9 && near(o.w, w, 1e-9)) {
                        PeriodicOrbit po;
                        po.length = rep.hits - o.index;
                        po.word.assign(rep.word.begin() + o.index, rep.word.end());
                        po.max_im = *std::max_element(hit_max.begin() + o.index, hit_max.end());
                        rep.periodic = po;
                        closed = true;
                        break;
                    }
                }
            }
        if (closed) break;
        seen[key(bj, bq, 0, 0)].push_back(st);
    }
    rep.time = t;
    return rep;
}

double busemann(Vec2 v, const Mat2& m) {
    if (v.x == 0 && v.y == 0) throw std::invalid_argument("busemann: zero vector");
    return std::log(norm(m(v)));
}

bool horodisk_contains(Vec2 v, double eps, UHPoint z) { return std::exp(busemann(v, coset_of(z))) < eps; }

Tangency tangency_check(Vec2 w) {
    double x = std::abs(w.x), y = std::abs(w.y);
    if (!(x > y && y > 0)) throw std::invalid_argument("tangency_check: need |x| > |y| > 0");
    auto f = [&](double t) { return std::hypot(std::exp(-t) * x, std::exp(t) * y); };
    // The minimizer is log(x/y)/2 > 0; bracket it generously.
    double hi = std::log(x / y) + 1;
    auto [tm, val] = boost::math::tools::brent_find_minima(f, 0.0, hi, 52);
    return {val, tm};
}

ScanResult well_approx_scan(double theta, LatticeVec v, int word_len) {
    if (v.is_zero()) throw std::invalid_argument("well_approx_scan: zero vector");
    auto gens = generators();
    const std::array<IntMat2, 3> refl{gens.at("R"), gens.at("RP0"), gens.at("P1^-1RP0")};
    const Vec2 u = unit(theta);
    auto canon = [](LatticeVec a) { return (a.m < 0 || (a.m == 0 && a.n < 0)) ? -a : a; };

    std::set<LatticeVec> seen{canon(v)};
    std::vector<std::pair<LatticeVec, int>> frontier{{v, -1}};
    std::vector<LatticeVec> orbit{canon(v)};
    for (int depth = 0; depth < word_len; ++depth) {
        std::vector<std::pair<LatticeVec, int>> next;
        for (auto [a, lastk] : frontier)
            for (int k = 0; k < 3; ++k) {
                if (k == lastk) continue;  // involutions
                LatticeVec b = refl[k](a);
                if (seen.insert(canon(b)).second) orbit.push_back(canon(b));
                next.push_back({b, k});
            }
        frontier = std::move(next);
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    }
    ScanResult res;
    for (LatticeVec a : orbit) {
        ScanVector sv;
        sv.lattice = a;
        sv.cart = a.to_vec2();
        sv.rotated = rotate(sv.cart, -theta);
        sv.score = norm(sv.cart) * std::abs(cross(u, sv.cart));
        if (sv.score < res.min_score) {
            res.min_score = sv.score;
            res.best = sv;
        }
        res.orbit.push_back(sv);
    }
    return res;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::CertifiedErgodic: return "ErgodicCertified";
        case Verdict::LatticeCusp: return "LatticeCusp";
        case Verdict::Inconclusive: return "Inconclusive";
        case Verdict::Singular: return "Singular";
    }
    return "?";
}

double reduce_to_sector(double theta) {
    const double step = kPi / 3;
    double r = std::fmod(theta, step);
    if (r < 0) r += step;
    if (step - r < 1e-15) r = 0;
    return r + step;
}

Certificate e0_certificate(double theta, double horizon) {
    if (theta < kPi / 3 - 1e-12 || theta > 2 * kPi / 3 + 1e-12)
        throw std::invalid_argument("e0_certificate: theta must lie in [pi/3, 2pi/3]");
    Certificate c;
    c.theta = theta;
    c.report = billiard_in_delta(theta, horizon);
    const ExcursionReport& r = c.report;
    if (r.singular) {
        c.verdict = Verdict::Singular;
    } else if (r.cusp_limit) {
        c.verdict = Verdict::LatticeCusp;
        c.lattice_class = *r.cusp_limit == CuspLimit::AtInfinity ? DirectionClass::DriftPeriodic : DirectionClass::Periodic;
    } else if (r.periodic && r.periodic->max_im > kLowLine) {
        c.verdict = Verdict::CertifiedErgodic;
    } else {
        c.verdict = Verdict::Inconclusive;
    }
    return c;
}

}  // namespace trihex
