#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "knotforge/curve.hpp"
#include "knotforge/diagram.hpp"
#include "knotforge/polynomial.hpp"

namespace knotforge {

struct SynthOptions {
    /// Required margin of every constraint, relative to max |h| over the crossing parameters.
    double min_margin = 1e-3;
    /// Lift margin = lift_factor * |min den| + lift_floor.
    double lift_factor = 2.0;
    double lift_floor = 1.0;
    /// Randomized seed assignments tried after the deterministic ones.
    int restarts = 64;
    std::uint64_t seed = 0;
    /// Budget of improvement rounds in the denominator phase of repair.
    int denominator_rounds = 40;
    /// Patterns tried per coordinate in reduce_coordinate.
    int pattern_limit = 32;
    /// Full pipeline retries in reduce_to_minimal.
    int pipeline_attempts = 8;
    SolverOptions solver;
};

/// Linear factors (t - separator) split into a degree-2 numerator and a
/// degree-4 denominator.
struct SeedAssignment {
    std::vector<double> separators;
    std::vector<int> numerator_picks;    // two indices into separators
    std::vector<int> denominator_picks;  // the remaining four
};

struct SynthResult {
    RationalFunction h;
    /// Per-constraint margins relative to max |h(t_k)| over the crossing parameters.
    std::vector<double> margins;
    std::vector<std::string> trace;
};

/// gamma_k = h(t_i) - h(t_j) for constraint k, before applying its relation.
using GapVector = std::vector<double>;

/// First separator one gap-width below the smallest parameter, the rest at
/// midpoints of consecutive gaps. `count` defaults to the number of
/// parameters; a smaller count spreads the midpoints evenly over the gaps.
std::vector<double> choose_separators(std::span<const double> params, int count = 0);

/// The 15 ways to pick 2 numerator factors out of 6, lexicographic in the numerator picks.
std::vector<SeedAssignment> seed_assignments(std::span<const double> separators);

RationalFunction seed_height(const SeedAssignment& a);

/// Adds `margin` to the constant term of the denominator. Requires
/// margin > -min(den); throws ErrorKind::invalid_input naming the bound otherwise.
RationalFunction lift_denominator(const RationalFunction& h, double margin);

/// Lift margin used by synthesize_height for a seed denominator.
double default_lift_margin(const RationalFunction& h, const SynthOptions& opts);

GapVector gap_vector(const RationalFunction& h, const std::vector<DoublePoint>& dps, const SignPattern& pattern);

/// Signed margins divided by max |h| over the crossing parameters.
std::vector<double> relative_margins(const RationalFunction& h, const std::vector<DoublePoint>& dps,
                                     const SignPattern& pattern);

/// Adjusts h until it realizes `pattern`.
///
/// With the denominator d fixed, h(t_i) > h(t_j) is linear in the numerator
/// coefficients, so the numerator phase solves a max-margin LP. If that
/// margin is too small, single denominator coefficients are perturbed on a
/// shrinking grid (keeping d positive) and the LP re-solved. Throws
/// ErrorKind::infeasible when the budget runs out.
SynthResult repair(const RationalFunction& h, const std::vector<DoublePoint>& dps, const SignPattern& pattern,
                   const SynthOptions& opts = {});

/// Degree-2/4 height with positive denominator realizing `pattern` on `dps`.
/// Seed 0 tries the 15 seed assignments in their natural order; other seeds
/// shuffle them. Randomized separators follow, all derived from opts.seed.
SynthResult synthesize_height(const std::vector<DoublePoint>& dps, const SignPattern& pattern,
                              const SynthOptions& opts = {});

/// Numerator constraint values c_k(u) = sigma_k (n_u(t_i)/d(t_i) - n_u(t_j)/d(t_j))
/// for numerator coefficients u; affine in u.
std::vector<double> numerator_constraint_values(const Polynomial& den, std::span<const double> numerator,
                                                const std::vector<DoublePoint>& dps, const SignPattern& pattern);

/// True when (q, p) of `d` is lexicographically above (4, 2).
bool exceeds_minimal(DegreePair d);

/// Replaces coordinate `axis` by a synthesized degree-2/4 function realizing
/// a `target` pattern on the projection to the other two coordinates.
Parameterization reduce_coordinate(const Parameterization& p, Axis axis, KnotType target,
                                   const SynthOptions& opts = {}, std::vector<std::string>* log = nullptr);

struct Reduction {
    Parameterization curve;
    std::vector<std::string> log;
};

/// Synthesizes z when absent (from `pattern`, or the first enumerated
/// pattern for `target`), then reduces every coordinate above degree 2/4.
Reduction reduce_to_minimal(const Parameterization& p, KnotType target, const SynthOptions& opts = {},
                            const std::optional<SignPattern>& pattern = std::nullopt);

}  // namespace knotforge
