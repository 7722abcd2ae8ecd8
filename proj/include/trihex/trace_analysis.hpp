#pragma once

#include "trihex/tiling.hpp"

#include <optional>
#include <vector>

namespace trihex {

struct FoldResult {
    std::vector<Vec2> points;  // folded segment endpoints, Cartesian
    double residual = 0;       // max distance from the initial line
    bool exact = false;        // residual computed in exact arithmetic
};

// Unfolds the trace by reflecting across every crossed edge; the result lies on one line.
FoldResult fold(const TraceResult& tr);

// |end - start| / elapsed time.
double drift_rate(const TraceResult& tr);

// Open central region of a triangle that no trajectory of standardized direction theta' (sign +)
// can enter. Empty for theta' = pi/2. Vertices are Cartesian, counterclockwise.
struct ExcludedRegion {
    TileKind kind = TileKind::TriangleUp;  // kind of triangle whose region is excluded
    std::vector<Vec2> polygon;             // region inside the triangle at anchor 0
};
ExcludedRegion excluded_region(double theta_std);

// Point strictly inside the excluded region of its triangle (translated copy).
bool in_excluded_region(const ExcludedRegion& reg, Vec2 p, double margin = 0);

struct ExcludedCheck {
    bool clean = true;            // no segment enters an excluded region
    int64_t violations = 0;
    double min_distance = 1e300;  // closest approach of a segment to an excluded region
    TileKind kind = TileKind::TriangleUp;  // excluded kind in the trace's own frame
};

// Trace must have been run with standardized direction theta_std and sign +.
ExcludedCheck excluded_triangle_check(const TraceResult& tr, double theta_std);
// Any direction and sign: the trace is mapped to the standardized frame first.
ExcludedCheck excluded_triangle_check(const TraceResult& tr, double theta, Orientation sign);

enum class SymmetryKind { Order3, Translation, None };

struct SymmetryReport {
    SymmetryKind kind = SymmetryKind::None;
    Vec2 center;                // rotation center (Order3), Cartesian
    bool center_is_hexagon = false;
    bool order6 = false;        // segment set also invariant under rotation by pi/3 about center
    LatticeVec shift;           // Translation
};

SymmetryReport symmetry_check(const TraceResult& tr);

// Largest deviation of segment directions from the allowed set: {theta, theta +- 2pi/3} in
// hexagons and -theta + {pi/3, pi, 5pi/3} in triangles, theta taken from the first segment.
double direction_set_error(const TraceResult& tr);

// True when every hexagon segment has the same orientation around its center.
bool orientation_constant(const TraceResult& tr);

}  // namespace trihex
