#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knotforge/curve.hpp"
#include "knotforge/int_polynomial.hpp"
#include "knotforge/polynomial.hpp"

namespace knotforge {

enum class KnotType { unknot, k3_1, k4_1, k5_1, k5_2, unknown };

std::string_view to_string(KnotType k);
/// Accepts "unknot", "3_1", "4_1", "5_1", "5_2" and the names trefoil,
/// figure-eight, cinquefoil, three-twist.
std::optional<KnotType> parse_knot_type(std::string_view s);

/// A double point with its over/under bit and handedness.
struct Crossing {
    DoublePoint dp;
    bool over_at_s = true;  // h(s) > h(t)
    int sign = 1;
};

enum class Relation { greater, less };

/// h(t_i) rel h(t_j), 1-based indices into the ascending crossing parameters.
struct Constraint {
    int i = 0;
    int j = 0;
    Relation rel = Relation::greater;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct SignPattern {
    std::vector<Constraint> constraints;

    friend bool operator==(const SignPattern&, const SignPattern&) = default;
};

std::string to_string(const SignPattern& p);

/// One entry of a signed Gauss code: crossing label (1-based), over/under, sign.
struct Passage {
    int crossing = 0;
    bool over = true;
    int sign = 1;

    friend bool operator==(const Passage&, const Passage&) = default;
};

/// Arc labels (0-based) meeting at a crossing.
struct ArcIncidence {
    int over = 0;
    int under_in = 0;
    int under_out = 0;
    int sign = 1;
};

using PdCrossing = std::array<int, 4>;

/// Combinatorial knot diagram stored as a signed Gauss code. Arcs run from
/// one undercrossing to the next, so an n-crossing diagram (n >= 1) has n arcs.
class Diagram {
public:
    Diagram() = default;

    /// Throws ErrorKind::invalid_input unless every label 1..n appears exactly
    /// twice, once over and once under, with a consistent sign.
    static Diagram from_gauss(std::vector<Passage> code);
    /// Parses text such as "O1+U2+O3+U1+O2+U3+".
    static Diagram parse_gauss(std::string_view text);
    /// Planar-diagram code, X[a,b,c,d] with a the incoming under edge and the
    /// rest counterclockwise. Multi-component inputs are rejected.
    static Diagram from_pd(const std::vector<PdCrossing>& pd);

    const std::vector<Passage>& gauss() const noexcept { return gauss_; }
    int crossing_count() const noexcept { return static_cast<int>(gauss_.size() / 2); }
    int arc_count() const noexcept { return crossing_count() == 0 ? 1 : crossing_count(); }

    /// Indexed by crossing label - 1.
    std::vector<ArcIncidence> incidences() const;
    std::vector<PdCrossing> pd() const;

    /// Minimal rotation with labels renumbered by first appearance.
    Diagram canonical() const;
    /// Same knot traversed backwards.
    Diagram reversed() const;
    /// Label k becomes perm[k - 1].
    Diagram relabeled(const std::vector<int>& perm) const;

    /// Geometric crossings when the diagram came from a curve, in label order.
    const std::vector<Crossing>& crossings() const noexcept { return crossings_; }

private:
    friend Diagram diagram_from_crossings(const std::vector<DoublePoint>& dps,
                                          const std::vector<Crossing>& crossings);
    std::vector<Passage> gauss_;
    std::vector<Crossing> crossings_;
};

std::string gauss_string(const Diagram& d);
std::string pd_string(const Diagram& d);

/// Over/under of h at each double point. Throws ErrorKind::degenerate when
/// |h(s) - h(t)| < 1e-9 max(1, |h(s)|, |h(t)|).
std::vector<Crossing> assign_over_under(const RationalFunction& h, const std::vector<DoublePoint>& dps);

SignPattern pattern_of(const std::vector<Crossing>& crossings, const std::vector<DoublePoint>& dps);

struct Satisfaction {
    bool ok = true;
    /// Per constraint, h(t_i) - h(t_j) multiplied by +1 for '>' and -1 for
    /// '<'; positive means the constraint holds.
    std::vector<double> margins;
};

Satisfaction satisfies(const RationalFunction& h, const std::vector<DoublePoint>& dps,
                       const SignPattern& pattern);

/// Crossings realizing `pattern` on `dps`. Every double point must be
/// constrained exactly once.
std::vector<Crossing> crossings_from_pattern(const std::vector<DoublePoint>& dps,
                                             const SignPattern& pattern);

Diagram diagram_from_crossings(const std::vector<DoublePoint>& dps, const std::vector<Crossing>& crossings);

/// Diagram of the curve (f, g, h) projected to the (f, g) plane. Requires a
/// compact embedding; otherwise throws ErrorKind::degenerate listing the issues.
Diagram build_diagram(const RationalFunction& f, const RationalFunction& g, const RationalFunction& h,
                      const std::vector<DoublePoint>& dps, double tol = kDefaultRootTol);

/// Number of Fox 3-colorings, 3^nullity of the crossing relations over Z/3.
std::int64_t tricolor_count(const Diagram& d);
/// A 3-coloring of the arcs using more than one color, if the diagram has one.
std::optional<std::vector<int>> tricoloring(const Diagram& d);

/// Normalized Alexander polynomial.
IntPolynomial alexander(const Diagram& d);

/// |Delta(-1)|.
std::int64_t determinant(const Diagram& d);

KnotType identify(const Diagram& d);

/// Over/under assignments on `dps` whose diagram identifies as `target`, in
/// bitmask order (bit k set means dp k is under at s). At most `limit`
/// results; limit <= 0 means all. Requires at most 20 crossings.
std::vector<SignPattern> enumerate_patterns(const std::vector<DoublePoint>& dps, KnotType target,
                                            int limit = 0);

/// Pattern with every crossing over at its earlier parameter (descending diagram).
SignPattern descending_pattern(const std::vector<DoublePoint>& dps);

struct CurveIdentification {
    KnotType knot = KnotType::unknown;
    Diagram diagram;
    std::vector<DoublePoint> dps;
    Axis height = Axis::z;  // coordinate used as height
};

/// Identifies a space curve from its x-y projection, falling back to the x-z
/// and y-z projections when a projection is degenerate.
CurveIdentification identify_curve(const Parameterization& p, const SolverOptions& opts = {});

}  // namespace knotforge
