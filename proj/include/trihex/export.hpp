#pragma once

#include "trihex/hyperbolic.hpp"
#include "trihex/rhombus.hpp"
#include "trihex/surface.hpp"
#include "trihex/tiling.hpp"
#include "trihex/veech.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>

namespace trihex {

using json = nlohmann::ordered_json;

// step, t_start, x_start, y_start, x_end, y_end, tile_kind, tile_anchor_m, tile_anchor_n
void write_trajectory_csv(std::ostream& os, const TraceResult& tr);

// [{i, c_m, c_n, x}]
json itinerary_json(const std::vector<SectionPoint>& pts);

json cylinders_json(LatticeVec direction, const std::vector<CylinderInfo>& cyls);

json matrix_json(const IntMat2& m, const std::vector<std::string>& word = {});

json certificate_json(const Certificate& c);

// t, im, wall_word_prefix_len
void write_excursion_csv(std::ostream& os, const ExcursionReport& rep);

struct SvgOptions {
    double scale = 40;               // pixels per unit length
    double margin = 1.5;             // extra room around the path, in tiling units
    int segments_per_path = 2000;    // segments drawn by one path element
    // Direction and sign of the trace; when set, the excluded central regions are shaded.
    std::optional<std::pair<double, Orientation>> excluded;
};

struct SvgBounds {
    double x0, y0, x1, y1;  // tiling coordinates
};
SvgBounds svg_bounds(const TraceResult& tr, const SvgOptions& opt = {});

// Tiling outline, shaded excluded regions and the path. The y axis points up in tiling
// coordinates and is flipped on output.
void write_svg(std::ostream& os, const TraceResult& tr, const SvgOptions& opt = {});

}  // namespace trihex
