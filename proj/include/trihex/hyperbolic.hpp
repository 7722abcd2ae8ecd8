#pragma once

#include "trihex/lattice.hpp"
#include "trihex/veech.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace trihex {

// Upper half-plane point.
struct UHPoint {
    double re = 0;
    double im = 1;
    std::complex<double> z() const { return {re, im}; }
};

// Real 2x2 matrix. Points of H^2 are cosets O(2) M with basepoint (d i - b) / (a - c i).
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    double det() const { return a * d - b * c; }
    Vec2 operator()(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    static Mat2 from(const QMat2& m);
};

// Isometric action: z -> (d z - b)/(a - c z), with z conjugated first when det < 0.
UHPoint act(const Mat2& m, UHPoint z);
// Action on the boundary R u {inf}; infinity is represented by +-INFINITY.
double act_boundary(const Mat2& m, double x);
UHPoint basepoint(const Mat2& m);
// Representative [[1/sqrt y, -x/sqrt y], [0, sqrt y]] of the coset based at z.
Mat2 coset_of(UHPoint z);

struct GeodesicSegment {
    enum class Kind { Vertical, Semicircle } kind = Kind::Vertical;
    double x = 0;       // vertical line position, or semicircle center
    double radius = 0;  // semicircle only
    UHPoint start;
    double end = INFINITY;  // ideal endpoint
};

// Geodesic ray from i ending at |cot theta|; theta = pi/2 gives the vertical ray down to 0.
GeodesicSegment geodesic_from_angle(double theta);

struct Wall {
    std::string name;
    Mat2 reflection;          // det -1, squares to the identity
    GeodesicSegment fixed;    // full geodesic fixed by the reflection (start unused)
    double other_end = 0;     // second ideal endpoint of the fixed geodesic
};

// Walls of the fundamental triangle: x = 0, x = sqrt3/3 and the semicircle |z - sqrt3/9| = 2 sqrt3/9.
// Built from the reflections R, R P0, P1^-1 R P0 conjugated into the standard basis and then by R.
std::array<Wall, 3> delta_walls();
// The pi/3 corner, at i/3.
UHPoint delta_corner();
bool in_delta(UHPoint z, double tol = 1e-12);

enum class CuspLimit { AtInfinity, AtSqrt3Over3 };
std::string to_string(CuspLimit c);

struct PeriodicOrbit {
    int length = 0;          // wall hits per period
    std::vector<int> word;   // wall indices hit during one period
    double max_im = 0;       // highest point reached during the period
};

struct ExcursionSample {
    double t = 0;   // hyperbolic arc length from the start
    double im = 0;
    int word_len = 0;  // wall hits so far
};

struct ExcursionReport {
    double theta = 0;
    double max_im = 0;  // over the traversed path; a final escape to a cusp is not included
    int crossings_above = 0;  // maximal excursions above 1/sqrt3
    int hits = 0;
    double time = 0;
    bool singular = false;  // ray hit the pi/3 corner
    std::optional<PeriodicOrbit> periodic;
    std::optional<CuspLimit> cusp_limit;
    std::vector<int> word;
    std::vector<ExcursionSample> samples;
};

// Billiard flow in the triangle started at i along geodesic_from_angle(theta), run until hyperbolic
// time horizon, a repeated wall state (periodic) or escape into a cusp.
ExcursionReport billiard_in_delta(double theta, double horizon, int max_hits = 100000);

double busemann(Vec2 v, const Mat2& m);
bool horodisk_contains(Vec2 v, double eps, UHPoint z);

struct Tangency {
    double value = 0;  // min over t > 0 of |g_t w|
    double t = 0;
};
// Numeric minimum of |g_t w| = sqrt(e^{-2t} x^2 + e^{2t} y^2); the closed form is sqrt(2|x||y|).
Tangency tangency_check(Vec2 w);

struct ScanVector {
    LatticeVec lattice;
    Vec2 cart;
    Vec2 rotated;  // coordinates with u_theta horizontal
    double score = 0;  // |v| * |u_theta ^ v|
};

struct ScanResult {
    double min_score = INFINITY;
    ScanVector best;
    std::vector<ScanVector> orbit;
};
// Orbit of v under words of length <= word_len in the reflections R, R P0, P1^-1 R P0.
ScanResult well_approx_scan(double theta, LatticeVec v, int word_len);

enum class Verdict { CertifiedErgodic, LatticeCusp, Inconclusive, Singular };
std::string to_string(Verdict v);

struct Certificate {
    double theta = 0;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<DirectionClass> lattice_class;  // for LatticeCusp
    ExcursionReport report;
};

// theta in [pi/3, 2pi/3]. Certification needs a periodic billiard path reaching Im > 1/sqrt3.
Certificate e0_certificate(double theta, double horizon);

// Rotation by a multiple of pi/3 into [pi/3, 2pi/3).
double reduce_to_sector(double theta);

}  // namespace trihex
