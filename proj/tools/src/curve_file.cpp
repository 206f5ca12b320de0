#include "knotforge/cli/curve_file.hpp"

#include <fstream>
#include <sstream>

#include "knotforge/error.hpp"

namespace knotforge::cli {

namespace {

std::vector<double> coeff_array(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) fail(ErrorKind::invalid_input, field + ": expected a non-empty coefficient array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) fail(ErrorKind::invalid_input, field + ": coefficients must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

nlohmann::json coeff_json(const Polynomial& p) {
    auto arr = nlohmann::json::array();
    if (p.is_zero()) arr.push_back(0.0);
    for (double c : p.coeffs()) arr.push_back(c);
    return arr;
}

}  // namespace

nlohmann::json to_json(const RationalFunction& r) { return {{"num", coeff_json(r.num())}, {"den", coeff_json(r.den())}}; }

RationalFunction rational_from_json(const nlohmann::json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        fail(ErrorKind::invalid_input, field + ": expected an object with \"num\" and \"den\"");
    Polynomial num(coeff_array(j["num"], field + ".num"));
    Polynomial den(coeff_array(j["den"], field + ".den"));
    if (den.is_zero()) fail(ErrorKind::invalid_input, field + ".den: denominator is identically zero");
    return {std::move(num), std::move(den)};
}

nlohmann::json to_json(const CurveFile& c) {
    nlohmann::json j;
    j["name"] = c.name;
    j["x"] = to_json(c.curve.x);
    j["y"] = to_json(c.curve.y);
    if (c.curve.z) j["z"] = to_json(*c.curve.z);
    j["meta"] = c.meta;
    return j;
}

CurveFile curve_from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail(ErrorKind::invalid_input, "curve file: expected a JSON object");
    CurveFile c;
    if (j.contains("name")) {
        if (!j["name"].is_string()) fail(ErrorKind::invalid_input, "name: expected a string");
        c.name = j["name"].get<std::string>();
    }
    if (!j.contains("x") || !j.contains("y")) fail(ErrorKind::invalid_input, "curve file: \"x\" and \"y\" are required");
    c.curve.x = rational_from_json(j["x"], "x");
    c.curve.y = rational_from_json(j["y"], "y");
    if (j.contains("z") && !j["z"].is_null()) c.curve.z = rational_from_json(j["z"], "z");
    if (j.contains("meta")) c.meta = j["meta"];
    return c;
}

nlohmann::json to_json(const SignPattern& p) {
    auto arr = nlohmann::json::array();
    for (const auto& c : p.constraints)
        arr.push_back({{"i", c.i}, {"j", c.j}, {"rel", c.rel == Relation::greater ? ">" : "<"}});
    return {{"constraints", arr}};
}

SignPattern pattern_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("constraints") || !j["constraints"].is_array())
        fail(ErrorKind::invalid_input, "pattern: expected {\"constraints\": [...]}");
    SignPattern p;
    std::size_t k = 0;
    for (const auto& c : j["constraints"]) {
        const std::string where = "constraints[" + std::to_string(k++) + "]";
        if (!c.is_object() || !c.contains("i") || !c.contains("j") || !c.contains("rel"))
            fail(ErrorKind::invalid_input, where + ": expected {\"i\", \"j\", \"rel\"}");
        if (!c["i"].is_number_integer() || !c["j"].is_number_integer())
            fail(ErrorKind::invalid_input, where + ": i and j must be integers");
        const auto rel = c["rel"].is_string() ? c["rel"].get<std::string>() : std::string();
        if (rel != ">" && rel != "<") fail(ErrorKind::invalid_input, where + ".rel: expected \">\" or \"<\"");
        Constraint con{c["i"].get<int>(), c["j"].get<int>(), rel == ">" ? Relation::greater : Relation::less};
        if (con.i < 1 || con.j < 1) fail(ErrorKind::invalid_input, where + ": indices are 1-based");
        p.constraints.push_back(con);
    }
    return p;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::invalid_input, "cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::invalid_input, path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::invalid_input, "cannot write " + path.string());
    out << text;
}

}  // namespace knotforge::cli
