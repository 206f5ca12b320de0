#include "knotforge/cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>

#include "knotforge/diagram.hpp"
#include "knotforge/error.hpp"

namespace knotforge::cli {

namespace {

struct Sample {
    double theta;
    double x;
    double y;
};

Axis third_axis(Axis a, Axis b) {
    for (Axis c : {Axis::x, Axis::y, Axis::z})
        if (c != a && c != b) return c;
    return Axis::z;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string render_svg(const Parameterization& p, const PlotOptions& opts, const SolverOptions& solver) {
    if (opts.horizontal == opts.vertical) fail(ErrorKind::invalid_input, "axes: the two plot axes must differ");
    if (!p.has(opts.horizontal) || !p.has(opts.vertical))
        fail(ErrorKind::invalid_input, "axes: the curve has no z coordinate");
    if (!(opts.window > 0)) fail(ErrorKind::invalid_input, "window: must be positive");
    const auto& f = p.coord(opts.horizontal);
    const auto& g = p.coord(opts.vertical);
    if (!is_positive(f.den()) || !is_positive(g.den()))
        fail(ErrorKind::domain, "plot: denominators must be positive on the real line");

    const Axis h_axis = third_axis(opts.horizontal, opts.vertical);
    const auto closure = closure_point(Parameterization{f, g, std::nullopt});

    auto at = [&](double theta) -> Sample {
        if (std::abs(theta) >= std::numbers::pi / 2) return {theta, closure.position[0], closure.position[1]};
        const double t = std::tan(theta);
        return {theta, f(t), g(t)};
    };

    // Initial grid: dense in the parameter window, angle-uniform in the tails.
    std::vector<double> grid;
    const double tw = std::atan(opts.window);
    for (int k = 0; k <= 256; ++k) grid.push_back(-std::numbers::pi / 2 + (std::numbers::pi / 2 - tw) * k / 256.0);
    for (int k = 1; k < 2048; ++k) grid.push_back(std::atan(-opts.window + 2 * opts.window * k / 2048.0));
    for (int k = 0; k <= 256; ++k) grid.push_back(tw + (std::numbers::pi / 2 - tw) * k / 256.0);

    std::vector<Sample> pts;
    for (double th : grid) pts.push_back(at(th));
    double xmin = pts[0].x, xmax = xmin, ymin = pts[0].y, ymax = ymin;
    for (const auto& s : pts) {
        xmin = std::min(xmin, s.x);
        xmax = std::max(xmax, s.x);
        ymin = std::min(ymin, s.y);
        ymax = std::max(ymax, s.y);
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});

    // Adaptive refinement: split segments that are long or turn sharply.
    for (int pass = 0; pass < 8; ++pass) {
        std::vector<Sample> next{pts.front()};
        bool changed = false;
        for (std::size_t k = 1; k < pts.size(); ++k) {
            const auto& a = pts[k - 1];
            const auto& b = pts[k];
            const auto m = at(0.5 * (a.theta + b.theta));
            const double len = std::hypot(b.x - a.x, b.y - a.y);
            const double dev = std::hypot(m.x - 0.5 * (a.x + b.x), m.y - 0.5 * (a.y + b.y));
            if (len > 0.01 * span || dev > 0.0005 * span) {
                next.push_back(m);
                changed = true;
            }
            next.push_back(b);
        }
        pts = std::move(next);
        if (!changed) break;
    }

    const auto dps = double_points(f, g, solver);
    std::vector<Crossing> crossings;
    std::optional<Diagram> diagram;
    if (p.has(h_axis)) {
        try {
            crossings = assign_over_under(p.coord(h_axis), dps);
            diagram = diagram_from_crossings(dps, crossings);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::degenerate) throw;
            crossings.clear();
        }
    }
    std::optional<std::vector<int>> coloring;
    if (opts.color && diagram) coloring = tricoloring(*diagram);

    const double margin = 0.05 * span;
    const double scale = (opts.size - 0.0) / (span + 2 * margin);
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    auto sx = [&](double x) { return opts.size / 2.0 + (x - cx) * scale; };
    auto sy = [&](double y) { return opts.size / 2.0 - (y - cy) * scale; };

    // Under parameters in traversal order determine the arc of every sample.
    std::vector<double> unders;
    for (const auto& c : crossings) unders.push_back(std::atan(c.over_at_s ? c.dp.t : c.dp.s));
    std::sort(unders.begin(), unders.end());
    const int n = static_cast<int>(unders.size());
    auto arc_of = [&](double theta) {
        const int passed = static_cast<int>(std::upper_bound(unders.begin(), unders.end(), theta) - unders.begin());
        return n == 0 ? 0 : (passed + n - 1) % n;
    };
    const double gap = 0.02 * span;
    auto hidden = [&](const Sample& s) {
        for (const auto& c : crossings) {
            if (std::hypot(s.x - c.dp.position.x, s.y - c.dp.position.y) >= gap) continue;
            const double under = std::atan(c.over_at_s ? c.dp.t : c.dp.s);
            const double over = std::atan(c.over_at_s ? c.dp.s : c.dp.t);
            if (std::abs(s.theta - under) < std::abs(s.theta - over)) return true;
        }
        return false;
    };

    static const char* palette[3] = {"#d62728", "#1f77b4", "#2ca02c"};
    auto stroke = [&](int arc) -> std::string {
        if (!coloring) return "#000000";
        return palette[(*coloring)[static_cast<std::size_t>(arc)]];
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.size << "\" height=\"" << opts.size
        << "\" viewBox=\"0 0 " << opts.size << ' ' << opts.size << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::vector<std::pair<int, std::vector<Sample>>> runs;
    for (const auto& s : pts) {
        if (hidden(s)) {
            if (!runs.empty() && !runs.back().second.empty()) runs.push_back({-1, {}});
            continue;
        }
        const int arc = arc_of(s.theta);
        if (runs.empty() || runs.back().first != arc) {
            std::vector<Sample> start;
            // keep the line continuous across a color change
            if (!runs.empty() && !runs.back().second.empty()) start.push_back(runs.back().second.back());
            runs.push_back({arc, std::move(start)});
        }
        runs.back().second.push_back(s);
    }
    for (const auto& [arc, run] : runs) {
        if (run.size() < 2) continue;
        svg << "<polyline fill=\"none\" stroke=\"" << stroke(arc) << "\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < run.size(); ++k) svg << (k ? " " : "") << num(sx(run[k].x)) << ',' << num(sy(run[k].y));
        svg << "\"/>\n";
    }
    for (const auto& dp : dps)
        svg << "<circle cx=\"" << num(sx(dp.position.x)) << "\" cy=\"" << num(sy(dp.position.y))
            << "\" r=\"4\" fill=\"none\" stroke=\"#888888\"/>\n";
    svg << "<rect x=\"" << num(sx(closure.position[0]) - 3) << "\" y=\"" << num(sy(closure.position[1]) - 3)
        << "\" width=\"6\" height=\"6\" fill=\"#888888\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace knotforge::cli
