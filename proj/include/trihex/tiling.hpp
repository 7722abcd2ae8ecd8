#pragma once

#include "trihex/lattice.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trihex {

using i128 = __int128;

enum class TileKind { Hexagon, TriangleUp, TriangleDown };
std::string to_string(TileKind k);

// Hexagons are addressed by their center in 2*Lambda. A triangle is addressed by the hexagon
// it sits directly above (TriangleUp) or below (TriangleDown).
struct Tile {
    TileKind kind = TileKind::Hexagon;
    LatticeVec anchor;

    friend bool operator==(const Tile&, const Tile&) = default;
    Vec2 center() const;
    std::vector<Vec2> vertices() const;
};

// Thrown when a point or a crossing lands on a tiling vertex.
struct VertexError : std::runtime_error {
    Vec2 where;
    explicit VertexError(Vec2 p) : std::runtime_error("point is a tiling vertex"), where(p) {}
};

// Tiles are the cells of the line arrangement x, y, x-y = odd integer in lattice coordinates.
// Points on an edge belong to the hexagon side; vertices raise VertexError.
Tile locate(Vec2 p, double tol = 1e-9);
Tile locate(const QVec2& p);

// Index triple of the open strips containing a point; k - (i - j) is 0 for hexagons, +1 for up triangles.
struct Cell {
    int64_t i = 0, j = 0, k = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};
Tile tile_of(const Cell& c);
Cell cell_of(const Tile& t);

struct RayState {
    Vec2 pos;     // Cartesian
    Vec2 dir;     // Cartesian unit vector
    Tile tile;
    Orientation sign = Orientation::Plus;
};

enum class Termination { Horizon, Singular, Periodic, DriftPeriodic };
std::string to_string(Termination t);

struct Segment {
    Vec2 start;
    Vec2 end;
    Tile tile;
    Vec2 dir;  // Cartesian unit direction inside the tile
    double t_start = 0;
    double t_end = 0;
};

// Exact lattice coordinates scaled by TraceResult::scale.
struct ScaledPoint {
    i128 x = 0;
    i128 y = 0;
    friend bool operator==(const ScaledPoint&, const ScaledPoint&) = default;
};

struct TraceResult {
    Mode mode = Mode::Float;
    std::vector<Segment> segments;
    Termination status = Termination::Horizon;
    std::optional<Vec2> singular_vertex;
    // Orientation around hexagon centers, taken in the first hexagon visited.
    std::optional<Orientation> sign;
    // Recurrence data, set for Periodic and DriftPeriodic.
    LatticeVec shift;
    double period_time = 0;
    int64_t combinatorial_period = 0;
    int64_t period_start = 0;  // index of the first segment of the detected period

    Vec2 start_point;  // Cartesian
    Vec2 end_point;
    double path_length = 0;
    int64_t hexagons_crossed = 0;
    int64_t triangles_crossed = 0;

    // Exact mode only: endpoints of the segments (segments.size()+1 entries) and the
    // lattice direction of each segment.
    i128 scale = 1;
    std::vector<ScaledPoint> exact_points;
    std::vector<LatticeVec> exact_dirs;

    // Lattice coordinates of segment endpoints for both modes.
    std::vector<Vec2> lattice_points;
    std::vector<Vec2> lattice_dirs;
    // Edge family crossed at the end of each segment (0: x = odd, 1: y = odd, 2: x - y = odd).
    std::vector<int> crossed_family;
};

struct TraceOptions {
    int64_t max_steps = 10000;
    double horizon = 0;          // stop once elapsed time exceeds this (0: no limit)
    bool detect_recurrence = true;
    double tol = 1e-9;
    bool record_segments = true;
};

// Exact trace from a rational point in a lattice direction. The start must have rational lattice
// coordinates (x, y); they are given as numerator pairs over a common denominator.
struct ExactStart {
    mpz_class x_num, y_num, den;
    static ExactStart from_qvec(const QVec2& p);
    static ExactStart from_rationals(const mpq_class& x, const mpq_class& y);
    QVec2 to_qvec() const;
};

TraceResult trace_exact(const ExactStart& start, LatticeVec dir, const TraceOptions& opt = {});
TraceResult trace_float(Vec2 start, double theta, const TraceOptions& opt = {});
TraceResult trace_float(Vec2 start, Vec2 dir, const TraceOptions& opt = {});

// Single refraction step in Float mode; throws VertexError when the crossing hits a vertex.
RayState refract_step(const RayState& s, double tol = 1e-9);

// Sign of (pos - center) x dir for a state inside a hexagon; throws if aimed at the center.
Orientation orientation_sign(const RayState& s, double tol = 1e-12);
Orientation orientation_sign(Vec2 pos, Vec2 dir, double tol = 1e-12);

}  // namespace trihex
