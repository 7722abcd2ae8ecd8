#pragma once

#include "trihex/qsqrt3.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace trihex {

constexpr double kPi = 3.14159265358979323846;
inline const double kSqrt3 = std::sqrt(3.0);

enum class Mode { Exact, Float };

struct Vec2 {
    double x = 0;
    double y = 0;

    friend Vec2 operator+(Vec2 p, Vec2 q) { return {p.x + q.x, p.y + q.y}; }
    friend Vec2 operator-(Vec2 p, Vec2 q) { return {p.x - q.x, p.y - q.y}; }
    friend Vec2 operator*(double s, Vec2 p) { return {s * p.x, s * p.y}; }
    friend bool operator==(Vec2 p, Vec2 q) = default;
};

inline double dot(Vec2 p, Vec2 q) { return p.x * q.x + p.y * q.y; }
inline double cross(Vec2 p, Vec2 q) { return p.x * q.y - p.y * q.x; }
inline double norm(Vec2 p) { return std::hypot(p.x, p.y); }
inline Vec2 rotate(Vec2 p, double a) {
    double c = std::cos(a), s = std::sin(a);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}
inline Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Angle reduced to [0, 2pi).
double normalize_angle(double a);

// m*v1 + n*v2 in the Eisenstein lattice.
struct LatticeVec {
    int64_t m = 0;
    int64_t n = 0;

    friend LatticeVec operator+(LatticeVec p, LatticeVec q) { return {p.m + q.m, p.n + q.n}; }
    friend LatticeVec operator-(LatticeVec p, LatticeVec q) { return {p.m - q.m, p.n - q.n}; }
    friend LatticeVec operator-(LatticeVec p) { return {-p.m, -p.n}; }
    friend LatticeVec operator*(int64_t k, LatticeVec p) { return {k * p.m, k * p.n}; }
    friend bool operator==(LatticeVec p, LatticeVec q) = default;
    friend auto operator<=>(LatticeVec p, LatticeVec q) = default;

    bool is_zero() const { return m == 0 && n == 0; }
    Vec2 to_vec2() const;
    QVec2 to_qvec() const;
    std::string to_string() const;
};

// v0 = (1,0), v1 = (-1/2, sqrt3/2), v2 = (-1/2, -sqrt3/2).
LatticeVec basis_vector(int i);
Vec2 basis_cartesian(int i);

// Lattice coordinates (x, y) of the point x*v1 + y*v2.
Vec2 to_lattice_coords(Vec2 p);
Vec2 from_lattice_coords(Vec2 q);
// Lattice coordinates of an exact point; they lie in Q(sqrt 3).
std::array<QSqrt3, 2> to_lattice_coords(const QVec2& p);

enum class DirectionClass { Periodic, DriftPeriodic, NotLattice };
std::string to_string(DirectionClass c);

int64_t hex_norm(LatticeVec v);
bool is_visible(LatticeVec v);
// Primitive vector in the direction of v (v / gcd).
LatticeVec primitive(LatticeVec v);

DirectionClass classify_tiling_direction(LatticeVec v);
DirectionClass classify_surface_direction(LatticeVec v);

// Integer 2x2 acting on (m, n) columns.
struct LatticeMap {
    int64_t a, b, c, d;
    LatticeVec operator()(LatticeVec v) const { return {a * v.m + b * v.n, c * v.m + d * v.n}; }
    Vec2 operator()(Vec2 q) const {
        return {double(a) * q.x + double(b) * q.y, double(c) * q.x + double(d) * q.y};
    }
    friend LatticeMap operator*(const LatticeMap& f, const LatticeMap& g) {
        return {f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
    }
    friend bool operator==(const LatticeMap&, const LatticeMap&) = default;
};

// Counterclockwise rotation by pi/3: v0 -> -v2, v1 -> -v0, v2 -> -v1.
inline constexpr LatticeMap kRot60{1, -1, 1, 0};
// Reflection across the vertical axis: v1 -> -v2, v2 -> -v1.
inline constexpr LatticeMap kReflectVertical{0, -1, -1, 0};
inline constexpr LatticeMap kIdentityMap{1, 0, 0, 1};

// The twelve symmetries of the lattice fixing the origin.
std::array<LatticeMap, 12> dihedral_group();

enum class Orientation { Plus, Minus };

// Rotation by rotation*pi/3 applied after an optional reflection across the vertical axis.
struct Isometry {
    int rotation = 0;
    bool reflect = false;

    LatticeMap lattice_map() const;
    Vec2 apply(Vec2 p) const;
    double apply_angle(double theta) const;
    std::string to_string() const;
};

struct Standardized {
    double theta;
    Isometry iso;
};

// Returns theta' in [pi/3, 2pi/3] and the isometry carrying (theta, sign) to (theta', +).
Standardized standardize_direction(double theta, Orientation sign);

}  // namespace trihex
