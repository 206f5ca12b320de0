#include "knotforge/cli/fixtures.hpp"

#include <functional>
#include <map>

namespace knotforge::cli {

namespace {

RationalFunction rf(std::vector<double> num, std::vector<double> den) {
    return {Polynomial(std::move(num)), Polynomial(std::move(den))};
}

RationalFunction trefoil_x() { return rf({1, 2, 5}, {1, 0, 1, 1, 1}); }
RationalFunction trefoil_y() { return rf({1, 0, 4}, {1, 0, 0.1, 0, 1}); }
RationalFunction trefoil_z() { return rf({3.2, 3.1, 1}, {3.9685, -1.6, -0.1, 2.745, 0.981}); }

RationalFunction fig8_x() {
    return {Polynomial::from_roots({-7, -4, -1, 1, 4, 7}), Polynomial({2392, 0, 5000, 0, 1, 0, 1})};
}
RationalFunction fig8_y() {
    return {Polynomial::from_roots({-5, -3, 3, 5, 0.972656, 7.027344}), Polynomial({5096, 0, 1, 0, 23.514793, 0, 1})};
}
RationalFunction fig8_h2() { return rf({-168.44, 67.0899, 73.8617}, {-0.484305, 0, 0, 0, 1}); }
RationalFunction fig8_g2() { return rf({-1591.53, -455.993, -42.7391}, {762.067, 0, -55.1785, 0, 1}); }
RationalFunction fig8_f2() {
    return rf({1.0516e-12, 4.72511e-13, 4.9738e-14}, {785.103, 29.5158, -24.8465, 4.43299, 0.960959});
}

CurveFile make(std::string name, std::string source, RationalFunction x, RationalFunction y,
               std::optional<RationalFunction> z = std::nullopt) {
    CurveFile c;
    c.name = std::move(name);
    c.curve = {std::move(x), std::move(y), std::move(z)};
    c.meta = {{"source", std::move(source)}};
    return c;
}

const std::map<std::string, std::function<CurveFile()>, std::less<>>& curves() {
    static const std::map<std::string, std::function<CurveFile()>, std::less<>> table{
        {"trefoil_xy", [] { return make("trefoil_xy", "trefoil projection of degree (2/4, 2/4)", trefoil_x(), trefoil_y()); }},
        {"trefoil_xyz",
         [] { return make("trefoil_xyz", "trefoil of degree (2/4, 2/4, 2/4)", trefoil_x(), trefoil_y(), trefoil_z()); }},
        {"fig8_xy",
         [] {
             return make("fig8_xy",
                         "figure-eight projection of degree (6/6, 6/6); x numerator (t+7)(t+4)(t+1)(t-1)(t-4)(t-7), "
                         "y numerator (t+5)(t+3)(t-3)(t-5)(t-.972656)(t-7.027344)",
                         fig8_x(), fig8_y());
         }},
        {"fig8_h2", [] { return make("fig8_h2", "figure-eight projection with reference height h2", fig8_x(), fig8_y(), fig8_h2()); }},
        {"fig8_g2", [] { return make("fig8_g2", "figure-eight with reference g2 and h2", fig8_x(), fig8_g2(), fig8_h2()); }},
        {"fig8_xyz_paper",
         [] { return make("fig8_xyz_paper", "reference figure-eight triple (f2, g2, h2)", fig8_f2(), fig8_g2(), fig8_h2()); }},
        {"circle",
         [] { return make("circle", "unit circle with constant height", rf({0, 2}, {1, 0, 1}), rf({1, 0, -1}, {1, 0, 1}), rf({1}, {1})); }},
        {"torus_2_5_xy",
         [] {
             return make("torus_2_5_xy", "five-crossing (2,5) torus projection, exp(2i theta) + exp(-3i theta)/2 at t = tan(theta/2)",
                         rf({1.5, 0, -12.5, 0, 2.5, 0, 0.5}, {1, 0, 3, 0, 3, 0, 1}),
                         rf({0, 1, 0, 10, 0, -7}, {1, 0, 3, 0, 3, 0, 1}));
         }},
    };
    return table;
}

SignPattern pat(std::initializer_list<std::tuple<int, int, char>> rows) {
    SignPattern p;
    for (auto [i, j, r] : rows) p.constraints.push_back({i, j, r == '>' ? Relation::greater : Relation::less});
    return p;
}

const std::map<std::string, SignPattern, std::less<>>& patterns() {
    static const std::map<std::string, SignPattern, std::less<>> table{
        {"3_1", pat({{1, 4, '>'}, {2, 5, '<'}, {3, 6, '>'}})},
        {"4_1", pat({{1, 8, '>'}, {2, 9, '>'}, {3, 16, '<'}, {4, 17, '>'}, {5, 12, '>'},
                     {6, 13, '>'}, {7, 20, '>'}, {10, 15, '<'}, {11, 18, '<'}, {14, 19, '>'}})},
        {"5_1", pat({{1, 6, '>'}, {2, 7, '<'}, {3, 8, '>'}, {4, 9, '<'}, {5, 10, '>'}})},
        {"5_2", pat({{1, 6, '>'}, {2, 5, '<'}, {3, 8, '>'}, {4, 9, '<'}, {7, 10, '>'}})},
    };
    return table;
}

}  // namespace

std::vector<std::string> curve_fixture_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : curves()) out.push_back(k);
    return out;
}

std::optional<CurveFile> curve_fixture(std::string_view name) {
    const auto it = curves().find(name);
    if (it == curves().end()) return std::nullopt;
    return it->second();
}

std::vector<std::string> pattern_fixture_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : patterns()) out.push_back(k);
    return out;
}

std::optional<SignPattern> pattern_fixture(std::string_view name) {
    const auto it = patterns().find(name);
    if (it == patterns().end()) return std::nullopt;
    return it->second;
}

}  // namespace knotforge::cli
