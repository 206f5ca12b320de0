#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knotforge/cli/curve_file.hpp"

namespace knotforge::cli {

std::vector<std::string> curve_fixture_names();
std::optional<CurveFile> curve_fixture(std::string_view name);

std::vector<std::string> pattern_fixture_names();
std::optional<SignPattern> pattern_fixture(std::string_view name);

}  // namespace knotforge::cli
