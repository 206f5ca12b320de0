#pragma once

#include <string>

#include "knotforge/curve.hpp"

namespace knotforge::cli {

struct PlotOptions {
    Axis horizontal = Axis::x;
    Axis vertical = Axis::y;
    /// Color arcs by a Fox 3-coloring when the diagram admits one.
    bool color = false;
    /// Parameter interval [-window, window] sampled densely; the tails out to
    /// the closure point are sampled in the angle atan(t).
    double window = 8.0;
    int size = 640;
};

/// SVG drawing of the projection onto (horizontal, vertical). When the third
/// coordinate is present the under-strand is broken at each crossing.
std::string render_svg(const Parameterization& p, const PlotOptions& opts, const SolverOptions& solver = {});

}  // namespace knotforge::cli
