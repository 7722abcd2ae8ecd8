#include "trihex/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace trihex {

double normalize_angle(double a) {
    double r = std::fmod(a, 2 * kPi);
    if (r < 0) r += 2 * kPi;
    if (r >= 2 * kPi) r = 0;
    return r;
}

Vec2 LatticeVec::to_vec2() const {
    return {-0.5 * double(m + n), 0.5 * kSqrt3 * double(m - n)};
}

QVec2 LatticeVec::to_qvec() const {
    return {QSqrt3(mpq_class(-(m + n), 2)), QSqrt3(0, mpq_class(m - n, 2))};
}

std::string LatticeVec::to_string() const {
    return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

LatticeVec basis_vector(int i) {
    switch (((i % 3) + 3) % 3) {
    case 0: return {-1, -1};
    case 1: return {1, 0};
    default: return {0, 1};
    }
}

Vec2 basis_cartesian(int i) { return basis_vector(i).to_vec2(); }

Vec2 to_lattice_coords(Vec2 p) {
    return {-p.x + p.y / kSqrt3, -p.x - p.y / kSqrt3};
}

Vec2 from_lattice_coords(Vec2 q) {
    return {-0.5 * (q.x + q.y), 0.5 * kSqrt3 * (q.x - q.y)};
}

std::array<QSqrt3, 2> to_lattice_coords(const QVec2& p) {
    QSqrt3 yr = p.y / QSqrt3::sqrt3();
    return {-p.x + yr, -p.x - yr};
}

std::string to_string(DirectionClass c) {
    switch (c) {
    case DirectionClass::Periodic: return "Periodic";
    case DirectionClass::DriftPeriodic: return "DriftPeriodic";
    default: return "NotLattice";
    }
}

int64_t hex_norm(LatticeVec v) {
    // v = t*v0 + (m+t)*v1 + (n+t)*v2 for every t; the minimizing t is minus the median of {0, m, n}.
    std::array<int64_t, 3> s{0, v.m, v.n};
    std::sort(s.begin(), s.end());
    int64_t t = -s[1];
    return std::abs(t) + std::abs(v.m + t) + std::abs(v.n + t);
}

bool is_visible(LatticeVec v) {
    if (v.is_zero()) throw std::invalid_argument("is_visible: zero vector");
    return std::gcd(v.m, v.n) == 1;
}

LatticeVec primitive(LatticeVec v) {
    if (v.is_zero()) throw std::invalid_argument("primitive: zero vector");
    int64_t g = std::gcd(v.m, v.n);
    return {v.m / g, v.n / g};
}

DirectionClass classify_tiling_direction(LatticeVec v) {
    if (v.is_zero()) throw std::invalid_argument("classify_tiling_direction: zero vector");
    return hex_norm(primitive(v)) % 3 == 0 ? DirectionClass::DriftPeriodic : DirectionClass::Periodic;
}

DirectionClass classify_surface_direction(LatticeVec v) {
    if (!is_visible(v)) throw std::invalid_argument("classify_surface_direction: vector not visible");
    return ((v.m - v.n) % 3 == 0) ? DirectionClass::DriftPeriodic : DirectionClass::Periodic;
}

std::array<LatticeMap, 12> dihedral_group() {
    std::array<LatticeMap, 12> out;
    LatticeMap r = kIdentityMap;
    for (int k = 0; k < 6; ++k) {
        out[k] = r;
        out[k + 6] = r * kReflectVertical;
        r = kRot60 * r;
    }
    return out;
}

LatticeMap Isometry::lattice_map() const {
    LatticeMap f = reflect ? kReflectVertical : kIdentityMap;
    for (int k = 0; k < ((rotation % 6) + 6) % 6; ++k) f = kRot60 * f;
    return f;
}

Vec2 Isometry::apply(Vec2 p) const {
    if (reflect) p.x = -p.x;
    return rotate(p, rotation * kPi / 3);
}

double Isometry::apply_angle(double theta) const {
    if (reflect) theta = kPi - theta;
    return normalize_angle(theta + rotation * kPi / 3);
}

std::string Isometry::to_string() const {
    std::string s = "rotate " + std::to_string(rotation) + "*pi/3";
    if (reflect) s = "reflect vertical, then " + s;
    return s;
}

Standardized standardize_direction(double theta, Orientation sign) {
    constexpr double eps = 1e-12;
    Isometry iso;
    iso.reflect = (sign == Orientation::Minus);
    for (int k = 0; k < 6; ++k) {
        iso.rotation = k;
        double t = iso.apply_angle(theta);
        if (t >= kPi / 3 - eps && t <= 2 * kPi / 3 + eps) return {std::clamp(t, kPi / 3, 2 * kPi / 3), iso};
    }
    throw std::logic_error("standardize_direction: no rotation lands in the sector");
}

}  // namespace trihex
