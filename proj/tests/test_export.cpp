#include "trihex/export.hpp"

#include <doctest.h>

#include <regex>
#include <sstream>

using namespace trihex;

namespace {

TraceResult sample_trace(int64_t steps) {
    TraceOptions opt;
    opt.max_steps = steps;
    opt.detect_recurrence = false;
    return trace_float({0.1234, 0.0567}, 1.1, opt);
}

size_t count(const std::string& s, const std::string& needle) {
    size_t n = 0;
    for (size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("trajectory csv has one row per segment") {
    TraceResult tr = sample_trace(250);
    std::ostringstream os;
    write_trajectory_csv(os, tr);
    std::string s = os.str();
    CHECK(s.rfind("step,t_start,x_start,y_start,x_end,y_end,tile_kind,tile_anchor_m,tile_anchor_n\n", 0) == 0);
    CHECK(count(s, "\n") == tr.segments.size() + 1);
    std::istringstream in(s);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    CHECK(count(line, ",") == 8);
    CHECK(line.rfind("0,0,", 0) == 0);
}

TEST_CASE("json shapes") {
    json it = itinerary_json(section_orbit({{0, {}}, 0.3}, 1.2, 5));
    REQUIRE(it.is_array());
    CHECK(it.size() == 6);
    CHECK(it[0]["i"] == 0);
    CHECK(it[0]["x"] == doctest::Approx(0.3));

    json cy = cylinders_json({1, 1}, cylinder_decomposition({1, 1}));
    CHECK(cy["direction"] == json::array({1, 1}));
    CHECK(cy["cylinders"].size() == 3);
    CHECK(cy["cylinders"][0]["sheets"] == 1);
    CHECK(cy["cylinders"][0]["lift"] == "strip");

    json mj = matrix_json(IntMat2{1, 3, 0, 1}, {"P1"});
    CHECK(mj["matrix"] == json::parse("[[1,3],[0,1]]"));
    CHECK(mj["word"] == json::array({"P1"}));
    CHECK_FALSE(matrix_json(kIdentity).contains("word"));

    json cj = certificate_json(e0_certificate(7 * kPi / 12, 30));
    CHECK(cj["verdict"] == "ErgodicCertified");
    CHECK(cj["period_word"].size() == 12);
    CHECK(cj["max_im"].get<double>() > 1);
}

TEST_CASE("excursion csv") {
    ExcursionReport r = billiard_in_delta(7 * kPi / 12, 30);
    std::ostringstream os;
    write_excursion_csv(os, r);
    CHECK(count(os.str(), "\n") == r.samples.size() + 1);
}

TEST_CASE("svg output") {
    TraceResult tr = sample_trace(4500);
    SvgOptions opt;
    opt.segments_per_path = 2000;
    std::ostringstream os;
    write_svg(os, tr, opt);
    std::string s = os.str();
    CHECK(s.rfind("<svg", 0) == 0);
    CHECK(s.find("</svg>") != std::string::npos);
    CHECK(count(s, "<path ") == (tr.segments.size() + 1999) / 2000);

    SvgBounds b = svg_bounds(tr, opt);
    for (const Segment& seg : tr.segments) {
        CHECK(seg.end.x > b.x0);
        CHECK(seg.end.x < b.x1);
        CHECK(seg.end.y > b.y0);
        CHECK(seg.end.y < b.y1);
    }
    std::smatch m;
    REQUIRE(std::regex_search(s, m, std::regex("width=\"([0-9.]+)\"")));
    CHECK(std::stod(m[1]) == doctest::Approx((b.x1 - b.x0) * opt.scale).epsilon(1e-3));

    // shading adds polygons, and output is deterministic
    opt.excluded = std::make_pair(1.1, *tr.sign);
    std::ostringstream a, c;
    write_svg(a, tr, opt);
    write_svg(c, tr, opt);
    CHECK(a.str() == c.str());
    CHECK(count(a.str(), "<polygon") > count(s, "<polygon"));
}
