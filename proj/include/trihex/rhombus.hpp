#pragma once

#include "trihex/tiling.hpp"

#include <array>
#include <optional>
#include <vector>

namespace trihex {

// R^i_c: the third of hexagon H_c whose short diagonal runs from c to c + v_i.
// Vertices c, c - v_{i+1}, c + v_i, c - v_{i-1}; edge k joins vertex k-1 to vertex k (mod 4).
struct RhombusCoord {
    int i = 0;  // 0, 1, 2
    LatticeVec c;
    friend bool operator==(const RhombusCoord&, const RhombusCoord&) = default;
    std::string to_string() const;
};

std::array<Vec2, 4> rhombus_vertices(const RhombusCoord& r);

// Local frame: rotate by -2pi i/3 about c, so the short diagonal is [0,1] x {0}.
Vec2 to_local(const RhombusCoord& r, Vec2 p);
Vec2 from_local(const RhombusCoord& r, Vec2 q);

// Rhombus of H_c containing p. A point on a splitting spoke goes to the rhombus counterclockwise
// of it. Throws std::invalid_argument at the center and when p is not in a hexagon.
RhombusCoord rhombus_of(Vec2 p);

struct ExitStep {
    RhombusCoord next;
    int exit_edge = 0;   // 3 or 4
    int entry_edge = 0;  // 1 or 2
    Vec2 exit_local;     // exit point, frame of the old rhombus
    Vec2 entry_local;    // entry point, frame of the new rhombus
    Vec2 entry;          // Cartesian image of the exit point under rotation by -2pi/3 about the shared vertex
    double time = 0;     // length travelled inside the old rhombus
};

// Flows from p (local frame) at angle theta in [pi/3, 2pi/3] against the short diagonal until it
// leaves through edge 3 or 4. Throws VertexError when the exit point is a rhombus vertex.
ExitStep exit_map(const RhombusCoord& r, Vec2 p_local, double theta);

struct SectionPoint {
    RhombusCoord rhombus;
    double x = 0.5;  // position along the short diagonal, in (0,1)
};

struct CocycleStep {
    SectionPoint next;
    LatticeVec deck;          // change of hexagon center
    int exit_edge = 0;
    double time_surface = 0;  // flow time on the surface
    double time_tiling = 0;   // flow time of the refracted trajectory between the same diagonals
};

// Return to the union of short diagonals. The tiling time comes from one refraction through the
// triangle between the two hexagons.
CocycleStep section_return(const SectionPoint& s, double theta);

// Rhombi visited by N section returns (N + 1 entries including the start).
std::vector<RhombusCoord> itinerary(const SectionPoint& s, double theta, int64_t n);
// Same walk, keeping the section points.
std::vector<SectionPoint> section_orbit(const SectionPoint& s, double theta, int64_t n);

struct DiagonalHit {
    SectionPoint point;
    double time = 0;  // trace time of the crossing
};

// Where each hexagon chord of a trace crosses its short diagonal. Requires a trace of sign +
// with hexagon directions in the standardized sector; other hexagon chords raise invalid_argument.
std::vector<DiagonalHit> tracer_diagonal_hits(const TraceResult& tr);
std::vector<SectionPoint> tracer_itinerary(const TraceResult& tr);

// Physical ray starting on the short diagonal of a section point.
RayState section_ray(const SectionPoint& s, double theta);

struct RotationEstimate {
    double mean = 0;    // average of x' - x (mod 1)
    double spread = 0;  // max - min of the samples
};
RotationEstimate measure_rotation(double theta, int samples, uint64_t seed = 1);

}  // namespace trihex
