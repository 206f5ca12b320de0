#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knotforge/polynomial.hpp"

namespace knotforge {

enum class Axis { x = 0, y = 1, z = 2 };

std::string_view to_string(Axis a);

/// A rational curve t -> (x(t), y(t)[, z(t)]). Planar projections leave z empty.
struct Parameterization {
    RationalFunction x;
    RationalFunction y;
    std::optional<RationalFunction> z;

    const RationalFunction& coord(Axis a) const;
    RationalFunction& coord(Axis a);
    bool has(Axis a) const { return a != Axis::z || z.has_value(); }
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// A pair of parameters s < t with the same planar image.
struct DoublePoint {
    double s = 0.0;
    double t = 0.0;
    Point2 position;
    int index = 0;        // 0-based rank by s ascending
    int orientation = 1;  // sign of cross(tangent(s), tangent(t))
};

/// Common limit of the coordinates as t -> +-infinity.
struct ClosurePoint {
    std::vector<double> position;
};

struct SolverOptions {
    double tol = 1e-9;
    /// Minimum sine of the angle between the two tangents at a crossing.
    double transversality = 1e-6;
    /// Sample count for the sign scan of the resultant over the compactified line.
    int samples = 1 << 17;
};

/// All double points of the planar curve (f, g), sorted by s.
///
/// The divided differences P(s,t) = [f](s,t) and Q(s,t) = [g](s,t) vanish
/// simultaneously exactly at off-diagonal pairs with equal image. The
/// Sylvester resultant of P and Q in s is scanned for sign changes along
/// t = tan(theta), each root is back-substituted for s and the pair polished
/// with Newton's method on (P, Q).
///
/// Throws ErrorKind::degenerate on tangential crossings and triple points.
std::vector<DoublePoint> double_points(const RationalFunction& f, const RationalFunction& g,
                                       const SolverOptions& opts = {});

/// max(|f(s) - f(t)|, |g(s) - g(t)|).
double pair_check(const RationalFunction& f, const RationalFunction& g, const DoublePoint& dp);

/// True iff (f', g') has no common real zero. The point at infinity is not
/// examined here; its position is checked by is_compact_embedding.
bool is_regular(const RationalFunction& f, const RationalFunction& g, double tol = kDefaultRootTol);

/// Throws ErrorKind::domain if a coordinate is unbounded.
ClosurePoint closure_point(const Parameterization& p);

struct EmbeddingReport {
    bool ok = true;
    std::vector<std::string> issues;
};

/// Detailed form of is_compact_embedding; lists every failed condition.
EmbeddingReport embedding_report(const Parameterization& p, const std::vector<DoublePoint>& dps,
                                 double tol = kDefaultRootTol);

bool is_compact_embedding(const Parameterization& p, const std::vector<DoublePoint>& dps,
                          double tol = kDefaultRootTol);

/// The 2n crossing parameters in ascending order (t_1 < ... < t_2n).
std::vector<double> crossing_parameters(const std::vector<DoublePoint>& dps);

/// 1-based positions of dp.s and dp.t in crossing_parameters(dps).
std::pair<int, int> parameter_indices(const std::vector<DoublePoint>& dps, const DoublePoint& dp);

/// Coefficients of the divided difference (a(s)b(t) - a(t)b(s)) / (s - t),
/// indexed [power of s][power of t].
std::vector<std::vector<double>> divided_difference(const RationalFunction& f);

}  // namespace knotforge
