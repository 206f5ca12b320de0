#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "knotforge/cli/curve_file.hpp"
#include "knotforge/error.hpp"

namespace knotforge::cli {

enum ExitCode : int { ok = 0, degenerate = 2, infeasible = 3, bad_input = 4 };

ExitCode exit_code(ErrorKind kind);

struct RunConfig {
    std::optional<std::string> input;
    std::optional<std::string> fixture;
    std::optional<std::string> pattern;       // pattern file
    std::optional<std::string> pattern_name;  // built-in pattern
    std::optional<std::string> out;
    std::optional<std::string> target;
    std::string axes = "xy";
    double tol = 1e-9;
    double min_margin = 1e-3;
    double lift_factor = 2.0;
    int budget = 64;
    std::uint64_t seed = 0;
    int limit = 0;
    bool color = false;
};

/// Throws ErrorKind::invalid_input naming the offending option.
void validate(const RunConfig& cfg);

/// Loads --input or --fixture.
CurveFile load_curve(const RunConfig& cfg);

/// Parses the command line and runs one command; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace knotforge::cli
