#include "commands.hpp"

#include "trihex/export.hpp"
#include "trihex/hyperbolic.hpp"
#include "trihex/rhombus.hpp"
#include "trihex/surface.hpp"
#include "trihex/tiling.hpp"
#include "trihex/trace_analysis.hpp"
#include "trihex/veech.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

namespace trihex::cli {

namespace {

// Billiard runs in floating point lose all accuracy by hyperbolic time ~35.
constexpr double kDefaultBilliardHorizon = 30;

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open " + path);
        os = &file;
    }
};

std::vector<std::string> split_pair(const std::string& s) {
    std::string t;
    for (char c : s)
        if (c != '(' && c != ')' && c != ' ') t += c;
    auto comma = t.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("expected a pair a,b: " + s);
    return {t.substr(0, comma), t.substr(comma + 1)};
}

double to_double(const std::string& s) {
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::logic_error&) {
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("not a number: " + s);
    return v;
}

int64_t to_int(const std::string& s) {
    size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::logic_error&) {
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("not an integer: " + s);
    return v;
}

mpq_class parse_rational(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        mpq_class q(s);
        q.canonicalize();
        return q;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    mpz_class den = 1;
    for (size_t k = dot + 1; k < s.size(); ++k) den *= 10;
    mpq_class q(mpz_class(digits), den);
    q.canonicalize();
    return q;
}

// Best rational approximation with denominator below 10^6, accepted when within 1e-12.
std::optional<mpq_class> rationalize(double v) {
    int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double x = v;
    for (int it = 0; it < 64; ++it) {
        int64_t a = int64_t(std::floor(x));
        int64_t h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > 1000000) break;
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        if (std::abs(double(h1) / double(k1) - v) < 1e-12) return mpq_class(h1, k1);
        double frac = x - double(a);
        if (frac < 1e-15) break;
        x = 1 / frac;
    }
    return std::nullopt;
}

std::pair<mpq_class, mpq_class> random_lattice_start(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> u(-1008, 1008);
    mpq_class x(u(rng), 1009), y(u(rng), 1009);
    x.canonicalize();
    y.canonicalize();
    return {x, y};
}

struct Direction {
    std::optional<LatticeVec> lattice;
    double theta = 0;
};

Direction resolve_direction(const RunConfig& cfg) {
    Direction d;
    if (cfg.lattice) {
        d.lattice = parse_lattice(*cfg.lattice);
        Vec2 v = d.lattice->to_vec2();
        d.theta = std::atan2(v.y, v.x);
    } else if (cfg.angle) {
        d.theta = parse_angle(*cfg.angle);
    } else {
        throw std::invalid_argument("give a direction with --lattice m,n or --angle");
    }
    return d;
}

Mode resolve_mode(const RunConfig& cfg, const Direction& d) {
    Mode m = d.lattice ? Mode::Exact : Mode::Float;
    if (cfg.mode) m = *cfg.mode == "exact" ? Mode::Exact : Mode::Float;
    if (m == Mode::Exact && !d.lattice)
        throw std::invalid_argument("exact mode needs a lattice direction (--lattice m,n); --angle is only traced in float mode");
    return m;
}

TraceResult run_trace(const RunConfig& cfg, const Direction& d, Mode mode, std::mt19937_64& rng, bool record) {
    TraceOptions opt;
    opt.max_steps = cfg.steps;
    opt.horizon = cfg.horizon;
    opt.tol = cfg.tol;
    opt.record_segments = record;
    if (mode == Mode::Exact) {
        std::pair<mpq_class, mpq_class> q;
        if (cfg.start_lattice) {
            auto p = split_pair(*cfg.start_lattice);
            q = {parse_rational(p[0]), parse_rational(p[1])};
        } else if (cfg.start) {
            auto p = split_pair(*cfg.start);
            Vec2 l = to_lattice_coords(Vec2{to_double(p[0]), to_double(p[1])});
            auto a = rationalize(l.x), b = rationalize(l.y);
            if (!a || !b) throw std::invalid_argument("exact mode needs a start with rational lattice coordinates (use --start-lattice)");
            q = {*a, *b};
        } else {
            q = random_lattice_start(rng);
        }
        return trace_exact(ExactStart::from_rationals(q.first, q.second), *d.lattice, opt);
    }
    Vec2 start;
    if (cfg.start) {
        auto p = split_pair(*cfg.start);
        start = {to_double(p[0]), to_double(p[1])};
    } else if (cfg.start_lattice) {
        auto p = split_pair(*cfg.start_lattice);
        start = from_lattice_coords({parse_rational(p[0]).get_d(), parse_rational(p[1]).get_d()});
    } else {
        auto q = random_lattice_start(rng);
        start = from_lattice_coords({q.first.get_d(), q.second.get_d()});
    }
    return trace_float(start, d.theta, opt);
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }
json vec_json(LatticeVec v) { return json::array({v.m, v.n}); }

json trace_summary(const TraceResult& tr) {
    json j{{"mode", tr.mode == Mode::Exact ? "exact" : "float"},
           {"status", to_string(tr.status)},
           {"segments", tr.hexagons_crossed + tr.triangles_crossed},
           {"hexagons", tr.hexagons_crossed},
           {"triangles", tr.triangles_crossed},
           {"path_length", tr.path_length},
           {"start", vec_json(tr.start_point)},
           {"end", vec_json(tr.end_point)}};
    if (tr.sign) j["sign"] = *tr.sign == Orientation::Plus ? "+" : "-";
    if (tr.status == Termination::Periodic || tr.status == Termination::DriftPeriodic) {
        j["combinatorial_period"] = tr.combinatorial_period;
        j["period_time"] = tr.period_time;
        j["shift"] = vec_json(tr.shift);
    }
    if (tr.singular_vertex) j["singular_vertex"] = vec_json(*tr.singular_vertex);
    return j;
}

std::mt19937_64 rng_for(uint64_t seed, uint64_t index) {
    std::seed_seq seq{uint32_t(seed), uint32_t(seed >> 32), uint32_t(index), uint32_t(index >> 32)};
    return std::mt19937_64(seq);
}

int certificate_exit(const Certificate& c) {
    if (c.verdict == Verdict::Singular) return kSingular;
    if (c.verdict == Verdict::Inconclusive) return kNoVerdict;
    return kOk;
}

}  // namespace

double parse_angle(const std::string& s) {
    static const std::regex re(R"(^\s*([+-]?[0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
    std::smatch m;
    if (std::regex_match(s, m, re)) {
        std::string k = m[1].str();
        double num = (k.empty() || k == "+") ? 1 : k == "-" ? -1 : std::stod(k);
        double den = m[2].matched ? std::stod(m[2].str()) : 1;
        return num * kPi / den;
    }
    try {
        return to_double(s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse angle: " + s);
    }
}

LatticeVec parse_lattice(const std::string& s) {
    auto p = split_pair(s);
    LatticeVec v{to_int(p[0]), to_int(p[1])};
    if (v.is_zero()) throw std::invalid_argument("lattice direction must be nonzero");
    return v;
}

void merge_config_file(RunConfig& cfg, const std::string& path, const std::function<bool(const std::string&)>& given) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    json j = json::parse(in);
    auto str = [&](const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_array() && v.size() == 2) return v[0].dump() + "," + v[1].dump();
        return v.dump();
    };
    for (auto& [key, v] : j.items()) {
        std::string flag = key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (given(flag)) continue;
        if (flag == "angle") cfg.angle = str(v);
        else if (flag == "lattice") cfg.lattice = str(v);
        else if (flag == "start") cfg.start = str(v);
        else if (flag == "start-lattice") cfg.start_lattice = str(v);
        else if (flag == "mode") cfg.mode = v.get<std::string>();
        else if (flag == "steps") cfg.steps = v.get<int64_t>();
        else if (flag == "horizon") cfg.horizon = v.get<double>();
        else if (flag == "tol") cfg.tol = v.get<double>();
        else if (flag == "format") cfg.format = v.get<std::string>();
        else if (flag == "out") cfg.out = v.get<std::string>();
        else if (flag == "jobs") cfg.jobs = v.get<int>();
        else if (flag == "seed") cfg.seed = v.get<uint64_t>();
        else if (flag == "range") cfg.range = v.get<int>();
        else if (flag == "src") cfg.src = str(v);
        else if (flag == "dst") cfg.dst = str(v);
        else throw std::invalid_argument("unknown config key: " + key);
    }
    if (cfg.mode && *cfg.mode != "exact" && *cfg.mode != "float") throw std::invalid_argument("mode must be exact or float");
    if (!(cfg.tol > 0)) throw std::invalid_argument("tol must be positive");
}

int cmd_trace(const RunConfig& cfg) {
    Direction d = resolve_direction(cfg);
    Mode mode = resolve_mode(cfg, d);
    auto rng = rng_for(cfg.seed, 0);
    TraceResult tr = run_trace(cfg, d, mode, rng, true);

    Output out(cfg.out);
    std::string format = cfg.format.empty() ? "csv" : cfg.format;
    if (format == "csv") {
        write_trajectory_csv(*out.os, tr);
    } else if (format == "json") {
        *out.os << trace_summary(tr).dump(2) << "\n";
    } else {
        SvgOptions opt;
        if (tr.sign) {
            try {
                excluded_region(standardize_direction(d.theta, *tr.sign).theta);
                opt.excluded = std::make_pair(d.theta, *tr.sign);
            } catch (const std::exception&) {
                // no excluded region for this direction
            }
        }
        write_svg(*out.os, tr, opt);
    }
    std::cerr << "status " << to_string(tr.status) << ", " << tr.hexagons_crossed + tr.triangles_crossed << " tiles";
    if (tr.status == Termination::Periodic || tr.status == Termination::DriftPeriodic)
        std::cerr << ", combinatorial period " << tr.combinatorial_period << ", shift " << tr.shift.to_string();
    std::cerr << "\n";
    return tr.status == Termination::Singular ? kSingular : kOk;
}

int cmd_classify(const RunConfig& cfg) {
    Direction d = resolve_direction(cfg);
    json out;
    int code = kOk;
    if (d.lattice) {
        LatticeVec v = primitive(*d.lattice);
        DirectionClass rule = classify_tiling_direction(v);
        RunConfig c = cfg;
        c.mode = "exact";
        TraceResult tr;
        for (uint64_t attempt = 0; attempt < 5; ++attempt) {
            auto rng = rng_for(cfg.seed, attempt);
            tr = run_trace(c, d, Mode::Exact, rng, false);
            if (tr.status != Termination::Singular || cfg.start || cfg.start_lattice) break;
        }
        std::string traced = to_string(tr.status);
        bool agrees = (tr.status == Termination::Periodic && rule == DirectionClass::Periodic) ||
                      (tr.status == Termination::DriftPeriodic && rule == DirectionClass::DriftPeriodic);
        Certificate cert = e0_certificate(reduce_to_sector(d.theta), kDefaultBilliardHorizon);
        out = {{"direction", vec_json(v)},
               {"class", to_string(rule)},
               {"evidence",
                {{"hex_norm", hex_norm(v)},
                 {"trace", trace_summary(tr)},
                 {"trace_agrees", agrees},
                 {"billiard", certificate_json(cert)}}}};
        if (tr.status == Termination::Singular) code = kSingular;
    } else {
        double th = reduce_to_sector(d.theta);
        Certificate cert = e0_certificate(th, cfg.horizon > 0 ? cfg.horizon : kDefaultBilliardHorizon);
        std::string cls = "Inconclusive";
        if (cert.verdict == Verdict::CertifiedErgodic) cls = "ErgodicCertified";
        if (cert.verdict == Verdict::LatticeCusp) cls = to_string(*cert.lattice_class);
        out = {{"angle", d.theta}, {"standardized_angle", th}, {"class", cls}, {"evidence", certificate_json(cert)}};
        code = certificate_exit(cert);
    }
    Output o(cfg.out);
    *o.os << out.dump(2) << "\n";
    return code;
}

int cmd_scan(const RunConfig& cfg) {
    std::vector<LatticeVec> dirs;
    for (int64_t m = -cfg.range; m <= cfg.range; ++m)
        for (int64_t n = -cfg.range; n <= cfg.range; ++n)
            if (!(m == 0 && n == 0) && is_visible({m, n})) dirs.push_back({m, n});

    std::vector<json> results(dirs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t k = next++; k < dirs.size(); k = next++) {
            LatticeVec v = dirs[k];
            json e{{"m", v.m}, {"n", v.n}};
            try {
                DirectionClass rule = classify_tiling_direction(v);
                RunConfig c = cfg;
                c.lattice = std::to_string(v.m) + "," + std::to_string(v.n);
                Direction d = resolve_direction(c);
                auto rng = rng_for(cfg.seed, k);
                TraceResult tr = run_trace(c, d, Mode::Exact, rng, false);
                e["rule"] = to_string(rule);
                e["traced"] = to_string(tr.status);
                e["hex_norm"] = hex_norm(v);
                if (tr.status == Termination::Periodic || tr.status == Termination::DriftPeriodic) {
                    e["combinatorial_period"] = tr.combinatorial_period;
                    e["drift"] = vec_json(tr.shift);
                }
                e["agrees"] = e["traced"] == e["rule"];
            } catch (const std::exception& ex) {
                e["error"] = ex.what();
            }
            results[k] = std::move(e);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < std::max(1, cfg.jobs); ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int periodic = 0, drift = 0, mismatches = 0, errors = 0;
    json entries = json::array();
    for (json& e : results) {
        if (e.contains("error")) ++errors;
        else if (!e["agrees"].get<bool>()) ++mismatches;
        else if (e["rule"] == "Periodic") ++periodic;
        else ++drift;
        entries.push_back(std::move(e));
    }
    json out{{"range", cfg.range},
             {"entries", entries},
             {"summary", {{"directions", dirs.size()}, {"periodic", periodic}, {"drift_periodic", drift},
                          {"mismatches", mismatches}, {"errors", errors}}}};
    Output o(cfg.out);
    *o.os << out.dump(2) << "\n";

    std::fprintf(stderr, "%6s %6s  %-14s %-14s %6s  %s\n", "m", "n", "rule", "traced", "period", "drift");
    for (const json& e : entries) {
        if (e.contains("error")) {
            std::fprintf(stderr, "%6lld %6lld  error: %s\n", (long long)e["m"].get<int64_t>(), (long long)e["n"].get<int64_t>(),
                         e["error"].get<std::string>().c_str());
            continue;
        }
        std::string period = e.contains("combinatorial_period") ? std::to_string(e["combinatorial_period"].get<int64_t>()) : "-";
        std::string dr = e.contains("drift") ? e["drift"].dump() : "-";
        std::fprintf(stderr, "%6lld %6lld  %-14s %-14s %6s  %s\n", (long long)e["m"].get<int64_t>(),
                     (long long)e["n"].get<int64_t>(), e["rule"].get<std::string>().c_str(),
                     e["traced"].get<std::string>().c_str(), period.c_str(), dr.c_str());
    }
    std::fprintf(stderr, "%zu directions: %d periodic, %d drift-periodic, %d mismatches, %d errors\n", dirs.size(), periodic,
                 drift, mismatches, errors);
    return (mismatches || errors) ? kNoVerdict : kOk;
}

int cmd_cylinders(const RunConfig& cfg) {
    if (!cfg.lattice) throw std::invalid_argument("cylinders needs --lattice m,n");
    LatticeVec v = primitive(parse_lattice(*cfg.lattice));
    Output o(cfg.out);
    *o.os << cylinders_json(v, cylinder_decomposition(v)).dump(2) << "\n";
    return kOk;
}

int cmd_veech(const RunConfig& cfg) {
    std::optional<std::string> dst = cfg.dst ? cfg.dst : cfg.lattice;
    if (!dst) throw std::invalid_argument("veech needs --dst m,n (or --lattice m,n)");
    LatticeVec b = parse_lattice(*dst);
    LatticeVec a = cfg.src ? parse_lattice(*cfg.src) : (cusp_class(b) == CuspClass::Xi ? LatticeVec{1, 1} : LatticeVec{1, 0});
    GroupElement g = find_element(a, b);
    json out = matrix_json(g.matrix, g.word);
    out["src"] = vec_json(a);
    out["dst"] = vec_json(b);
    out["in_veech"] = in_veech(g.matrix);
    Output o(cfg.out);
    *o.os << out.dump(2) << "\n";
    return kOk;
}

int cmd_certify(const RunConfig& cfg) {
    Direction d = resolve_direction(cfg);
    double th = reduce_to_sector(d.theta);
    Certificate cert = e0_certificate(th, cfg.horizon > 0 ? cfg.horizon : kDefaultBilliardHorizon);
    Output o(cfg.out);
    if (cfg.format == "csv") {
        write_excursion_csv(*o.os, cert.report);
    } else {
        json out = certificate_json(cert);
        out["input_angle"] = d.theta;
        *o.os << out.dump(2) << "\n";
    }
    return certificate_exit(cert);
}

int cmd_surface_trace(const RunConfig& cfg) {
    Direction d = resolve_direction(cfg);
    double th = reduce_to_sector(d.theta);
    double x;
    if (cfg.start) {
        x = to_double(cfg.start->substr(0, cfg.start->find(',')));
    } else {
        auto rng = rng_for(cfg.seed, 0);
        x = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    }
    if (!(x > 0 && x < 1)) throw std::invalid_argument("surface-trace start must lie in (0, 1) along the short diagonal");
    auto pts = section_orbit({{0, {}}, x}, th, cfg.steps);
    Output o(cfg.out);
    *o.os << itinerary_json(pts).dump(2) << "\n";
    return kOk;
}

}  // namespace trihex::cli
