#pragma once

#include "trihex/rhombus.hpp"

#include <array>
#include <string>
#include <vector>

namespace trihex {

// Surface chart: every rhombus is the unit square [-1,0]^2 in lattice coordinates of its local
// frame (x*v1 + y*v2). Edge 1 is y = 0, edge 2 is x = -1, edge 3 is y = -1, edge 4 is x = 0.
struct SurfacePoint {
    RhombusCoord rhombus;
    Vec2 local;  // lattice coordinates in [-1,0]^2
};

SurfacePoint surface_point_of(const SectionPoint& s);

struct GluedEdge {
    RhombusCoord rhombus;
    int edge = 0;
    friend bool operator==(const GluedEdge&, const GluedEdge&) = default;
};

// Edge of the neighbouring rhombus identified with edge `edge` of r.
GluedEdge glue(const RhombusCoord& r, int edge);

// Straight-line flow on the surface for time t (Cartesian length) in a local direction given in
// lattice coordinates. Returns the visited points: start, every edge crossing, end.
std::vector<SurfacePoint> surface_flow(const SurfacePoint& p, Vec2 dir_lattice, double t);

// Closed curves on the three-rhombus torus minus the vertices, based at a fixed point of rhombus 0.
enum class Generator { Alpha, Beta0, Beta1, Beta2 };
std::string to_string(Generator g);

struct Letter {
    Generator g;
    bool inverse = false;
};
using CurveWord = std::vector<Letter>;

// Parses words such as "a b0 B1 b2" (capital letter = inverse).
CurveWord parse_word(const std::string& s);
std::string to_string(const CurveWord& w);

// Algebraic intersection numbers (eta0 . gamma, eta1 . gamma), by counting signed edge crossings
// of the curve's polygonal representative.
std::array<int64_t, 2> eta_intersections(const CurveWord& w);

// h(gamma) = 2 (eta0 . gamma) v0 + 2 (eta1 . gamma) v1, using linearity over the basis.
LatticeVec monodromy_h(const CurveWord& w);

struct Development {
    LatticeVec displacement;  // end center minus start center
    bool closed = false;      // curve returns to the base point on the quotient
    int64_t crossings = 0;
};
// Develops the curve into the tiling through the gluing rules.
Development develop_curve(const CurveWord& w);

enum class LiftKind { Cylinder, Strip };

struct CylinderInfo {
    LatticeVec direction;
    Vec2 holonomy;        // Cartesian, oriented with positive x (or positive y when vertical)
    LatticeVec holonomy_lattice;
    QSqrt3 area;
    int sheets = 0;       // number of rhombi crossed by the core curve per period
    LiftKind lift = LiftKind::Cylinder;
    LatticeVec deck;      // translation of the lift per core period (zero for Cylinder)
};

// Cylinders of the three-rhombus quotient in a visible direction, computed exactly from the
// monodromy of one closed leaf of the torus.
std::vector<CylinderInfo> cylinder_decomposition(LatticeVec v);

struct TimeChangePair {
    double surface = 0;  // surface time between consecutive section hits
    double tiling = 0;   // tiling time between the corresponding diagonal crossings
};

struct OrbitEquivalence {
    RayState start;  // tiling state of the section point
    std::vector<SectionPoint> surface_hits;
    std::vector<SectionPoint> tiling_hits;
    std::vector<TimeChangePair> pairs;
    bool itineraries_match = true;
    double max_position_error = 0;
};

// Runs the surface section map and the refracted trajectory side by side for n returns.
OrbitEquivalence orbit_equivalence(const SectionPoint& s, double theta, int64_t n);

// Tiling state reached from the section point after surface time u within its first return,
// with tiling time rescaled affinely over the return.
RayState tiling_state_at(const SectionPoint& s, double theta, double u);

}  // namespace trihex
