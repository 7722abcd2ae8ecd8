#include "trihex/export.hpp"

#include "trihex/trace_analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace trihex {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const TraceResult& tr) {
    os << "step,t_start,x_start,y_start,x_end,y_end,tile_kind,tile_anchor_m,tile_anchor_n\n";
    for (size_t k = 0; k < tr.segments.size(); ++k) {
        const Segment& s = tr.segments[k];
        os << k << ',' << fmt(s.t_start) << ',' << fmt(s.start.x) << ',' << fmt(s.start.y) << ',' << fmt(s.end.x) << ','
           << fmt(s.end.y) << ',' << to_string(s.tile.kind) << ',' << s.tile.anchor.m << ',' << s.tile.anchor.n << '\n';
    }
}

json itinerary_json(const std::vector<SectionPoint>& pts) {
    json out = json::array();
    for (const SectionPoint& p : pts)
        out.push_back({{"i", p.rhombus.i}, {"c_m", p.rhombus.c.m}, {"c_n", p.rhombus.c.n}, {"x", p.x}});
    return out;
}

json cylinders_json(LatticeVec direction, const std::vector<CylinderInfo>& cyls) {
    json list = json::array();
    for (const CylinderInfo& c : cyls) {
        list.push_back({{"holonomy", {c.holonomy.x, c.holonomy.y}},
                        {"holonomy_lattice", {c.holonomy_lattice.m, c.holonomy_lattice.n}},
                        {"area", c.area.to_string()},
                        {"sheets", c.sheets},
                        {"lift", c.lift == LiftKind::Strip ? "strip" : "cylinder"},
                        {"deck", {c.deck.m, c.deck.n}}});
    }
    return {{"direction", {direction.m, direction.n}}, {"cylinders", list}};
}

json matrix_json(const IntMat2& m, const std::vector<std::string>& word) {
    json out{{"matrix", {{m.a, m.b}, {m.c, m.d}}}};
    if (!word.empty()) out["word"] = word;
    return out;
}

json certificate_json(const Certificate& c) {
    json out{{"theta", c.theta}, {"verdict", to_string(c.verdict)}};
    const ExcursionReport& r = c.report;
    if (r.periodic) {
        std::vector<std::string> names;
        static const auto walls = delta_walls();
        for (int j : r.periodic->word) names.push_back(walls[j].name);
        out["period_word"] = names;
        out["period_max_im"] = r.periodic->max_im;
    }
    out["max_im"] = r.max_im;
    out["crossings_above"] = r.crossings_above;
    out["wall_hits"] = r.hits;
    out["time"] = r.time;
    if (r.cusp_limit) out["cusp_limit"] = to_string(*r.cusp_limit);
    if (c.lattice_class) out["lattice_class"] = to_string(*c.lattice_class);
    return out;
}

void write_excursion_csv(std::ostream& os, const ExcursionReport& rep) {
    os << "t,im,wall_word_prefix_len\n";
    for (const ExcursionSample& s : rep.samples) os << fmt(s.t) << ',' << fmt(s.im) << ',' << s.word_len << '\n';
}

SvgBounds svg_bounds(const TraceResult& tr, const SvgOptions& opt) {
    SvgBounds b{tr.start_point.x, tr.start_point.y, tr.start_point.x, tr.start_point.y};
    for (const Segment& s : tr.segments)
        for (Vec2 p : {s.start, s.end})
            if (std::isfinite(p.x) && std::isfinite(p.y)) {
                b.x0 = std::min(b.x0, p.x);
                b.y0 = std::min(b.y0, p.y);
                b.x1 = std::max(b.x1, p.x);
                b.y1 = std::max(b.y1, p.y);
            }
    b.x0 -= opt.margin;
    b.y0 -= opt.margin;
    b.x1 += opt.margin;
    b.y1 += opt.margin;
    return b;
}

void write_svg(std::ostream& os, const TraceResult& tr, const SvgOptions& opt) {
    const SvgBounds b = svg_bounds(tr, opt);
    const double w = (b.x1 - b.x0) * opt.scale, h = (b.y1 - b.y0) * opt.scale;
    auto px = [&](Vec2 p) { return fmt_px((p.x - b.x0) * opt.scale) + "," + fmt_px((b.y1 - p.y) * opt.scale); };
    auto inside = [&](Vec2 p) { return p.x > b.x0 - 2 && p.x < b.x1 + 2 && p.y > b.y0 - 2 && p.y < b.y1 + 2; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_px(w) << "\" height=\"" << fmt_px(h)
       << "\" viewBox=\"0 0 " << fmt_px(w) << ' ' << fmt_px(h) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Hexagon centers sit at even lattice coordinates.
    Vec2 corners[4] = {{b.x0, b.y0}, {b.x0, b.y1}, {b.x1, b.y0}, {b.x1, b.y1}};
    double lo_m = 1e300, hi_m = -1e300, lo_n = 1e300, hi_n = -1e300;
    for (Vec2 c : corners) {
        Vec2 q = to_lattice_coords(c);
        lo_m = std::min(lo_m, q.x);
        hi_m = std::max(hi_m, q.x);
        lo_n = std::min(lo_n, q.y);
        hi_n = std::max(hi_n, q.y);
    }
    auto even_floor = [](double v) { return int64_t(std::floor(v / 2)) * 2 - 2; };
    std::vector<Tile> tiles;
    for (int64_t m = even_floor(lo_m); m <= hi_m + 2; m += 2)
        for (int64_t n = even_floor(lo_n); n <= hi_n + 2; n += 2)
            for (TileKind k : {TileKind::Hexagon, TileKind::TriangleUp, TileKind::TriangleDown}) {
                Tile t{k, {m, n}};
                if (inside(t.center())) tiles.push_back(t);
            }

    os << "<g fill=\"none\" stroke=\"#c8c8c8\" stroke-width=\"0.5\">\n";
    for (const Tile& t : tiles) {
        os << "<polygon points=\"";
        for (Vec2 v : t.vertices()) os << px(v) << ' ';
        os << "\"/>\n";
    }
    os << "</g>\n";

    if (opt.excluded) {
        auto [theta, sign] = *opt.excluded;
        Standardized st = standardize_direction(theta, sign);
        ExcludedRegion reg = excluded_region(st.theta);
        auto back = [&](Vec2 p) {
            p = rotate(p, -st.iso.rotation * kPi / 3);
            if (st.iso.reflect) p.x = -p.x;
            return p;
        };
        Vec2 ref = Tile{reg.kind, {}}.center();
        Vec2 ref_back = back(ref);
        TileKind kind = locate(ref_back).kind;
        os << "<g fill=\"#5a7bb5\" fill-opacity=\"0.45\" stroke=\"none\">\n";
        for (const Tile& t : tiles) {
            if (t.kind != kind) continue;
            Vec2 c = t.center();
            os << "<polygon points=\"";
            for (Vec2 q : reg.polygon) os << px(c + back(q - ref)) << ' ';
            os << "\"/>\n";
        }
        os << "</g>\n";
    }

    os << "<g fill=\"none\" stroke=\"#b22222\" stroke-width=\"1\">\n";
    const size_t batch = size_t(std::max(1, opt.segments_per_path));
    for (size_t k = 0; k < tr.segments.size(); k += batch) {
        os << "<path d=\"M" << px(tr.segments[k].start);
        for (size_t j = k; j < std::min(tr.segments.size(), k + batch); ++j) os << " L" << px(tr.segments[j].end);
        os << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
}

}  // namespace trihex
