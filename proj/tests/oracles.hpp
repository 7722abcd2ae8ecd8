#pragma once

// Test-side reference computations, written independently of the library.

#include "trihex/lattice.hpp"

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>

namespace oracle {

// min |a| + |b| + |c| over a*v0 + b*v1 + c*v2 = m*v1 + n*v2, by brute force over the kernel
// direction v0 + v1 + v2 = 0.
inline int64_t hex_norm(int64_t m, int64_t n) {
    int64_t best = INT64_MAX;
    int64_t span = std::abs(m) + std::abs(n) + 1;
    for (int64_t k = -span; k <= span; ++k) best = std::min(best, std::abs(k) + std::abs(m + k) + std::abs(n + k));
    return best;
}

inline bool drift_periodic(int64_t m, int64_t n) { return hex_norm(m, n) % 3 == 0; }

inline bool visible(int64_t m, int64_t n) { return (m != 0 || n != 0) && std::gcd(m, n) == 1; }

// Cartesian m*v1 + n*v2 from the basis vectors written out directly.
inline trihex::Vec2 cartesian(double m, double n) {
    const double h = std::sqrt(3.0) / 2;
    return {-0.5 * m - 0.5 * n, h * m - h * n};
}

inline double angle_of(int64_t m, int64_t n) {
    trihex::Vec2 v = cartesian(double(m), double(n));
    return std::atan2(v.y, v.x);
}

}  // namespace oracle
