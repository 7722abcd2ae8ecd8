#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace trihex::cli;

int main(int argc, char** argv) {
    CLI::App app{"Refracted rays in the tiling by unit hexagons and triangles"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--angle", cfg.angle, "direction in radians, e.g. 0.785 or pi/4");
        sub->add_option("--lattice", cfg.lattice, "lattice direction m,n (m*v1 + n*v2)");
        sub->add_option("--start", cfg.start, "Cartesian start x,y");
        sub->add_option("--start-lattice", cfg.start_lattice, "start in lattice coordinates p,q (rationals allowed)");
        sub->add_option("--steps", cfg.steps, "maximum number of steps");
        sub->add_option("--horizon", cfg.horizon, "time horizon (0: none)");
        sub->add_option("--mode", cfg.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        sub->add_option("--tol", cfg.tol, "float tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
        sub->add_option("--out", cfg.out, "output file (default: stdout)");
        sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "seed for generated start points");
        sub->add_option("--config", config_path, "JSON file with default option values");
    };

    auto* trace = app.add_subcommand("trace", "trace a refracted ray");
    auto* classify = app.add_subcommand("classify", "classify a direction");
    auto* scan = app.add_subcommand("scan", "classify all visible lattice directions in a box");
    auto* cylinders = app.add_subcommand("cylinders", "cylinder decomposition of the quotient surface");
    auto* veech = app.add_subcommand("veech", "group element carrying one direction to another");
    auto* certify = app.add_subcommand("certify", "hyperbolic ergodicity certificate");
    auto* surface = app.add_subcommand("surface-trace", "rhombus itinerary of the section map");
    for (auto* s : {trace, classify, scan, cylinders, veech, certify, surface}) common(s);
    scan->add_option("--range", cfg.range, "bound on |m| and |n|")->check(CLI::NonNegativeNumber);
    veech->add_option("--src", cfg.src, "source direction m,n");
    veech->add_option("--dst", cfg.dst, "target direction m,n");

    CLI11_PARSE(app, argc, argv);

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (!config_path.empty()) {
            merge_config_file(cfg, config_path, [&](const std::string& key) {
                auto* opt = sub->get_option_no_throw("--" + key);
                return opt != nullptr && opt->count() > 0;
            });
        }
        if (sub == trace) return cmd_trace(cfg);
        if (sub == classify) return cmd_classify(cfg);
        if (sub == scan) return cmd_scan(cfg);
        if (sub == cylinders) return cmd_cylinders(cfg);
        if (sub == veech) return cmd_veech(cfg);
        if (sub == certify) return cmd_certify(cfg);
        if (sub == surface) return cmd_surface_trace(cfg);
    } catch (const std::exception& e) {
        std::cerr << "trihex: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
