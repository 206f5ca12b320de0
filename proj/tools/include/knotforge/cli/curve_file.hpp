#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "knotforge/curve.hpp"
#include "knotforge/diagram.hpp"

namespace knotforge::cli {

/// A curve on disk: {"name", "x": {"num", "den"}, "y", "z"?, "meta"}.
/// Coefficient arrays are in ascending power order.
struct CurveFile {
    std::string name;
    Parameterization curve;
    nlohmann::json meta = nlohmann::json::object();
};

nlohmann::json to_json(const RationalFunction& r);
RationalFunction rational_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json to_json(const CurveFile& c);
CurveFile curve_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SignPattern& p);
SignPattern pattern_from_json(const nlohmann::json& j);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace knotforge::cli
