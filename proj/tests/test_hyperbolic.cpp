#include "oracles.hpp"
#include "trihex/hyperbolic.hpp"

#include <doctest.h>

#include <random>

using namespace trihex;

namespace {

double hdist(UHPoint p, UHPoint q) {
    double dx = p.re - q.re, dy = p.im - q.im;
    return std::acosh(1 + (dx * dx + dy * dy) / (2 * p.im * q.im));
}

bool near(UHPoint p, UHPoint q, double tol = 1e-9) { return std::abs(p.re - q.re) < tol && std::abs(p.im - q.im) < tol; }

}  // namespace

TEST_CASE("walls are reflections fixing the triangle sides") {
    auto walls = delta_walls();
    const double s3 = std::sqrt(3.0);
    for (const Wall& w : walls) {
        CAPTURE(w.name);
        CHECK(std::abs(w.reflection.det() + 1) < 1e-12);
        Mat2 sq = w.reflection * w.reflection;
        CHECK(std::abs(std::abs(sq.a) - 1) < 1e-12);
        CHECK(std::abs(sq.b) < 1e-12);
        CHECK(std::abs(sq.c) < 1e-12);
        CHECK(std::abs(sq.a - sq.d) < 1e-12);
    }
    CHECK(walls[0].fixed.kind == GeodesicSegment::Kind::Vertical);
    CHECK(std::abs(walls[0].fixed.x) < 1e-12);
    CHECK(walls[1].fixed.kind == GeodesicSegment::Kind::Vertical);
    CHECK(std::abs(walls[1].fixed.x - s3 / 3) < 1e-12);
    CHECK(walls[2].fixed.kind == GeodesicSegment::Kind::Semicircle);
    CHECK(std::abs(walls[2].fixed.x - s3 / 9) < 1e-12);
    CHECK(std::abs(walls[2].fixed.radius - 2 * s3 / 9) < 1e-12);

    // each reflection fixes points of its wall and moves others
    std::vector<UHPoint> on{{0, 2.5}, {s3 / 3, 0.7}, {s3 / 9 + 2 * s3 / 9 * std::cos(1.0), 2 * s3 / 9 * std::sin(1.0)}};
    for (int k = 0; k < 3; ++k) {
        CHECK(near(act(walls[k].reflection, on[k]), on[k]));
        UHPoint p{0.2, 1.3};
        CHECK(near(act(walls[k].reflection, act(walls[k].reflection, p)), p));
        CHECK(std::abs(hdist(act(walls[k].reflection, p), act(walls[k].reflection, {0.1, 0.9})) - hdist(p, {0.1, 0.9})) <
              1e-9);
    }
}

TEST_CASE("triangle corner and interior") {
    UHPoint c = delta_corner();
    CHECK(std::abs(c.re) < 1e-12);
    CHECK(std::abs(c.im - 1.0 / 3) < 1e-12);
    // angle between x = 0 and the semicircle at the corner
    const double s3 = std::sqrt(3.0);
    Vec2 radial{c.re - s3 / 9, c.im};
    Vec2 tangent{-radial.y, radial.x};
    double ang = std::acos(std::abs(tangent.y) / norm(tangent));
    CHECK(std::abs(ang - kPi / 3) < 1e-12);
    CHECK(in_delta({0.2, 1.0}));
    CHECK_FALSE(in_delta({0.7, 1.0}));
    CHECK_FALSE(in_delta({0.1, 0.2}));
    CHECK(in_delta({0, 1}));  // i lies on the wall x = 0
}

TEST_CASE("action and basepoint") {
    Mat2 id;
    CHECK(near(basepoint(id), {0, 1}));
    for (UHPoint z : {UHPoint{0.3, 2.0}, UHPoint{-1.2, 0.4}}) CHECK(near(basepoint(coset_of(z)), z));
    Mat2 m{2, 1, 1, 1};
    UHPoint p{0.4, 0.8}, q{-0.3, 1.7};
    CHECK(std::abs(hdist(act(m, p), act(m, q)) - hdist(p, q)) < 1e-9);
    CHECK(std::isinf(act_boundary(Mat2{1, 0, 1, 1}, 1.0)));
}

TEST_CASE("geodesic rays from i") {
    for (double th : {kPi / 3, 1.3, 7 * kPi / 12, 2 * kPi / 3 - 0.01}) {
        GeodesicSegment g = geodesic_from_angle(th);
        CHECK(near(g.start, {0, 1}));
        CHECK(std::abs(std::abs(g.end) - std::abs(std::cos(th) / std::sin(th))) < 1e-12);
        if (g.kind == GeodesicSegment::Kind::Semicircle) {
            CHECK(std::abs(std::hypot(g.x, 1.0) - g.radius) < 1e-12);
            CHECK(std::abs(std::abs(g.end - g.x) - g.radius) < 1e-12);
        }
    }
    GeodesicSegment v = geodesic_from_angle(kPi / 2);
    CHECK(v.kind == GeodesicSegment::Kind::Vertical);
    CHECK(v.end == 0);
    CHECK_THROWS(geodesic_from_angle(0));
    CHECK_THROWS(geodesic_from_angle(kPi));
}

TEST_CASE("busemann function and horodisks") {
    for (double s : {0.0, 0.5, 2.0, -1.0}) CHECK(std::abs(busemann({1, 0}, coset_of({0, std::exp(s)})) + s / 2) < 1e-12);
    CHECK(horodisk_contains({1, 0}, 0.5, {0.3, 5}));
    CHECK_FALSE(horodisk_contains({1, 0}, 0.5, {0.3, 3}));
    CHECK_THROWS(busemann({0, 0}, Mat2{}));
    // for v = (1,0) and eps = 3^(1/4) the horodisk is Im z > 1/sqrt3
    const double eps = std::pow(3.0, 0.25), h = 1 / std::sqrt(3.0);
    CHECK(horodisk_contains({1, 0}, eps, {0.4, h * 1.01}));
    CHECK_FALSE(horodisk_contains({1, 0}, eps, {0.4, h * 0.99}));
    CHECK(horodisk_contains({1, 0}, eps, {0, h * (1 + 1e-6)}));
    CHECK(horodisk_contains({1, 0}, 1e9, {3, 0.01}));
}

TEST_CASE("tangency minimum matches the closed form") {
    Tangency t = tangency_check({2, 0.5});
    CHECK(std::abs(t.value - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(t.t - std::log(2.0)) < 1e-6);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.01, 10);
    for (int k = 0; k < 100; ++k) {
        double x = u(rng), y = u(rng);
        if (x < y) std::swap(x, y);
        if (x - y < 1e-3) continue;
        Tangency r = tangency_check({x, -y});
        CHECK(std::abs(r.value - std::sqrt(2 * x * y)) < 1e-10 * std::sqrt(2 * x * y) + 1e-12);
        CHECK(std::abs(r.t - 0.5 * std::log(x / y)) < 1e-6);
    }
    CHECK_THROWS(tangency_check({1, 2}));
    Tangency near_diag = tangency_check({1, 1 - 1e-6});
    CHECK(std::abs(near_diag.value - std::sqrt(2.0)) < 1e-6);
    CHECK(near_diag.t < 1e-3);
}

TEST_CASE("billiard at 7pi/12 is periodic and climbs above the threshold") {
    ExcursionReport r = billiard_in_delta(7 * kPi / 12, 30);
    REQUIRE(r.periodic);
    CHECK(r.periodic->length == 12);
    CHECK(std::abs(r.periodic->max_im - 2) < 1e-9);
    CHECK(r.max_im > 1 / std::sqrt(3.0));
    CHECK_FALSE(r.singular);
    Certificate c = e0_certificate(7 * kPi / 12, 30);
    CHECK(c.verdict == Verdict::CertifiedErgodic);
    CHECK(to_string(c.verdict) == "ErgodicCertified");
}

TEST_CASE("lattice directions escape into the cusp of their class") {
    int checked = 0;
    for (int m = -8; m <= 8; ++m)
        for (int n = -8; n <= 8; ++n) {
            if (!oracle::visible(m, n)) continue;
            double a = normalize_angle(oracle::angle_of(m, n));
            if (a <= kPi / 3 + 1e-9 || a >= 2 * kPi / 3 - 1e-9) continue;
            ExcursionReport r = billiard_in_delta(a, 30);
            if (r.singular) continue;
            REQUIRE(r.cusp_limit);
            bool xi = ((m - n) % 3 + 3) % 3 == 0;
            CHECK(*r.cusp_limit == (xi ? CuspLimit::AtInfinity : CuspLimit::AtSqrt3Over3));
            ++checked;
        }
    CHECK(checked > 10);
}

TEST_CASE("certificates and sector reduction") {
    CHECK(std::abs(reduce_to_sector(kPi / 4) - (kPi / 4 + kPi / 3)) < 1e-12);
    for (double t = -7; t < 7; t += 0.31) {
        double r = reduce_to_sector(t);
        CHECK(r >= kPi / 3 - 1e-12);
        CHECK(r < 2 * kPi / 3);
        double k = (t - r) / (kPi / 3);
        CHECK(std::abs(k - std::round(k)) < 1e-9);
    }
    CHECK_THROWS(e0_certificate(0.5, 30));
    Certificate v = e0_certificate(kPi / 2, 30);
    CHECK(v.verdict == Verdict::LatticeCusp);
}

TEST_CASE("well-approximation scan stays above zero for a certified angle") {
    ScanResult s = well_approx_scan(7 * kPi / 12, {1, 0}, 6);
    CHECK(s.orbit.size() > 10);
    CHECK(s.min_score > 0);
    for (const ScanVector& v : s.orbit) {
        CHECK(std::abs(norm(v.cart) - norm(v.rotated)) < 1e-9);
        CHECK(std::abs(v.score - norm(v.rotated) * std::abs(v.rotated.y)) < 1e-9 * (1 + v.score));
    }
}
