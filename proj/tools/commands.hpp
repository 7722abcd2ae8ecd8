#pragma once

#include "trihex/lattice.hpp"

#include <functional>
#include <optional>
#include <string>

namespace trihex::cli {

enum ExitCode { kOk = 0, kUsage = 1, kSingular = 2, kNoVerdict = 3 };

struct RunConfig {
    std::optional<std::string> angle;    // radians, or k*pi/d written like "7pi/12"
    std::optional<std::string> lattice;  // "m,n"
    std::optional<std::string> start;    // Cartesian "x,y"
    std::optional<std::string> start_lattice;  // lattice coordinates "p,q", rationals allowed
    std::optional<std::string> mode;     // exact | float
    int64_t steps = 10000;
    double horizon = 0;
    double tol = 1e-9;
    std::string format;                  // csv | json | svg (command default when empty)
    std::string out;
    int jobs = 1;
    uint64_t seed = 1;
    int range = 6;
    std::optional<std::string> src, dst;
};

// Fields missing on the command line are taken from the JSON file.
void merge_config_file(RunConfig& cfg, const std::string& path, const std::function<bool(const std::string&)>& given);

double parse_angle(const std::string& s);
LatticeVec parse_lattice(const std::string& s);

int cmd_trace(const RunConfig& cfg);
int cmd_classify(const RunConfig& cfg);
int cmd_scan(const RunConfig& cfg);
int cmd_cylinders(const RunConfig& cfg);
int cmd_veech(const RunConfig& cfg);
int cmd_certify(const RunConfig& cfg);
int cmd_surface_trace(const RunConfig& cfg);

}  // namespace trihex::cli
