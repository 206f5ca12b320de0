#include "knotforge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "knotforge/error.hpp"
#include "knotforge/linear_program.hpp"

namespace knotforge {

namespace {

// Portable draws on top of mt19937_64 (the std distributions are
// implementation-defined, which would break cross-platform determinism).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 gen_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

double sigma(Relation r) { return r == Relation::greater ? 1.0 : -1.0; }

void check_pattern(const SignPattern& pattern, std::size_t param_count) {
    for (const auto& c : pattern.constraints) {
        if (c.i < 1 || c.j < 1 || static_cast<std::size_t>(c.i) > param_count ||
            static_cast<std::size_t>(c.j) > param_count || c.i == c.j)
            fail(ErrorKind::invalid_input, "pattern index outside the crossing parameters");
    }
}

struct NumeratorSolution {
    double tau = -1.0;
    RationalFunction h;
};

// Max-margin numerator for a fixed positive denominator. Coordinates are
// scaled so that the LP sees O(1) entries: t -> t / T and d -> d / D.
NumeratorSolution solve_numerator(const Polynomial& den, const std::vector<double>& params,
                                  const SignPattern& pattern) {
    double T = 1.0;
    for (double p : params) T = std::max(T, std::abs(p));
    double D = 0.0;
    for (double p : params) D = std::max(D, den(p));

    auto row = [&](double t) {
        const double u = t / T;
        const double w = D / den(t);
        return std::vector<double>{w, w * u, w * u * u};
    };
    std::vector<std::vector<double>> strict, bounded;
    for (double p : params) bounded.push_back(row(p));
    for (const auto& c : pattern.constraints) {
        const auto vi = bounded[static_cast<std::size_t>(c.i - 1)];
        const auto vj = bounded[static_cast<std::size_t>(c.j - 1)];
        std::vector<double> a(3);
        for (std::size_t k = 0; k < 3; ++k) a[k] = sigma(c.rel) * (vi[k] - vj[k]);
        strict.push_back(std::move(a));
    }
    const auto sol = max_margin(strict, bounded, 1e6);
    std::vector<double> num(3);
    for (std::size_t k = 0; k < 3; ++k) num[k] = sol.x[k] * D / std::pow(T, static_cast<double>(k));
    return {sol.margin, RationalFunction(Polynomial(std::move(num)), den)};
}

// Opposite relations on the same pair can never hold together.
void check_consistent(const SignPattern& pattern) {
    const auto& cs = pattern.constraints;
    for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = a + 1; b < cs.size(); ++b) {
            const bool same = cs[a].i == cs[b].i && cs[a].j == cs[b].j;
            const bool swapped = cs[a].i == cs[b].j && cs[a].j == cs[b].i;
            if ((same && cs[a].rel != cs[b].rel) || (swapped && cs[a].rel == cs[b].rel))
                fail(ErrorKind::infeasible, "pattern infeasible: contradictory constraints on (t" + std::to_string(cs[a].i) +
                                                ", t" + std::to_string(cs[a].j) + ")");
        }
}

bool meets(const std::vector<double>& margins, double min_margin) {
    return std::all_of(margins.begin(), margins.end(), [&](double m) { return m >= min_margin; });
}

std::string picks_string(const SeedAssignment& a) {
    std::ostringstream os;
    os << "numerator factors at";
    for (int i : a.numerator_picks) os << ' ' << fmt(a.separators[static_cast<std::size_t>(i)]);
    os << ", denominator factors at";
    for (int i : a.denominator_picks) os << ' ' << fmt(a.separators[static_cast<std::size_t>(i)]);
    return os.str();
}

}  // namespace

std::vector<double> choose_separators(std::span<const double> params, int count) {
    std::vector<double> p(params.begin(), params.end());
    std::sort(p.begin(), p.end());
    const int n = static_cast<int>(p.size());
    if (count <= 0) count = n;
    if (n == 0) {
        std::vector<double> out;
        for (int k = 0; k < count; ++k) out.push_back(static_cast<double>(k));
        return out;
    }
    const double first_gap = n >= 2 ? p[1] - p[0] : 1.0;
    std::vector<double> out{p[0] - first_gap};
    const int gaps = n - 1;
    const int interior = std::min(count - 1, gaps);
    for (int k = 0; k < interior; ++k) {
        const int g = interior == gaps ? k
                      : interior == 1  ? gaps / 2
                                       : static_cast<int>(std::lround(static_cast<double>(k) * (gaps - 1) / (interior - 1)));
        out.push_back(0.5 * (p[static_cast<std::size_t>(g)] + p[static_cast<std::size_t>(g + 1)]));
    }
    const double last_gap = n >= 2 ? p[static_cast<std::size_t>(n - 1)] - p[static_cast<std::size_t>(n - 2)] : 1.0;
    for (int k = 1; static_cast<int>(out.size()) < count; ++k) out.push_back(p.back() + k * last_gap);
    return out;
}

std::vector<SeedAssignment> seed_assignments(std::span<const double> separators) {
    if (separators.size() != 6)
        fail(ErrorKind::invalid_input, "seed assignments need exactly six separators");
    std::vector<SeedAssignment> out;
    for (int a = 0; a < 6; ++a) {
        for (int b = a + 1; b < 6; ++b) {
            SeedAssignment s;
            s.separators.assign(separators.begin(), separators.end());
            s.numerator_picks = {a, b};
            for (int k = 0; k < 6; ++k)
                if (k != a && k != b) s.denominator_picks.push_back(k);
            out.push_back(std::move(s));
        }
    }
    return out;
}

RationalFunction seed_height(const SeedAssignment& a) {
    if (a.numerator_picks.size() != 2 || a.denominator_picks.size() != 4)
        fail(ErrorKind::invalid_input, "seed assignment must pick 2 numerator and 4 denominator factors");
    std::vector<int> all(a.numerator_picks);
    all.insert(all.end(), a.denominator_picks.begin(), a.denominator_picks.end());
    std::sort(all.begin(), all.end());
    for (std::size_t k = 0; k < all.size(); ++k)
        if (all[k] != static_cast<int>(k) || a.separators.size() != all.size())
            fail(ErrorKind::invalid_input, "seed assignment picks must partition the separators");
    auto roots = [&](const std::vector<int>& idx) {
        std::vector<double> r;
        for (int i : idx) r.push_back(a.separators[static_cast<std::size_t>(i)]);
        return Polynomial::from_roots(r);
    };
    return {roots(a.numerator_picks), roots(a.denominator_picks)};
}

RationalFunction lift_denominator(const RationalFunction& h, double margin) {
    const double needed = -global_min(h.den()).value;
    if (!(margin > needed)) {
        std::ostringstream os;
        os << "lift margin " << margin << " is insufficient; it must exceed " << needed;
        fail(ErrorKind::invalid_input, os.str());
    }
    RationalFunction out(h.num(), h.den() + Polynomial::constant(margin));
    if (!is_positive(out.den())) fail(ErrorKind::invalid_input, "lifted denominator is not positive");
    return out;
}

double default_lift_margin(const RationalFunction& h, const SynthOptions& opts) {
    const double m = global_min(h.den()).value;
    return opts.lift_factor * std::abs(m) + opts.lift_floor;
}

GapVector gap_vector(const RationalFunction& h, const std::vector<DoublePoint>& dps, const SignPattern& pattern) {
    const auto params = crossing_parameters(dps);
    check_pattern(pattern, params.size());
    GapVector out;
    for (const auto& c : pattern.constraints)
        out.push_back(h(params[static_cast<std::size_t>(c.i - 1)]) - h(params[static_cast<std::size_t>(c.j - 1)]));
    return out;
}

std::vector<double> relative_margins(const RationalFunction& h, const std::vector<DoublePoint>& dps,
                                     const SignPattern& pattern) {
    const auto params = crossing_parameters(dps);
    double scale = 0.0;
    for (double p : params) scale = std::max(scale, std::abs(h(p)));
    if (scale == 0.0) scale = 1.0;
    const auto gaps = gap_vector(h, dps, pattern);
    std::vector<double> out;
    for (std::size_t k = 0; k < gaps.size(); ++k)
        out.push_back(sigma(pattern.constraints[k].rel) * gaps[k] / scale);
    return out;
}

std::vector<double> numerator_constraint_values(const Polynomial& den, std::span<const double> numerator,
                                                const std::vector<DoublePoint>& dps, const SignPattern& pattern) {
    const RationalFunction h(Polynomial(std::vector<double>(numerator.begin(), numerator.end())), den);
    const auto gaps = gap_vector(h, dps, pattern);
    std::vector<double> out;
    for (std::size_t k = 0; k < gaps.size(); ++k) out.push_back(sigma(pattern.constraints[k].rel) * gaps[k]);
    return out;
}

SynthResult repair(const RationalFunction& h, const std::vector<DoublePoint>& dps, const SignPattern& pattern,
                   const SynthOptions& opts) {
    if (!is_positive(h.den())) fail(ErrorKind::domain, "repair: denominator is not positive");
    const auto params = crossing_parameters(dps);
    check_pattern(pattern, params.size());
    check_consistent(pattern);
    if (pattern.constraints.empty()) return {h, {}, {}};

    {
        auto m = relative_margins(h, dps, pattern);
        if (meets(m, opts.min_margin)) return {h, std::move(m), {}};
    }

    SynthResult res;
    auto accept = [&](const NumeratorSolution& s) {
        if (s.tau < opts.min_margin) return false;
        auto m = relative_margins(s.h, dps, pattern);
        if (!meets(m, opts.min_margin)) return false;
        res.h = s.h;
        res.margins = std::move(m);
        return true;
    };

    NumeratorSolution best = solve_numerator(h.den(), params, pattern);
    res.trace.push_back("numerator LP: margin " + fmt(best.tau));
    if (accept(best)) return res;

    // Denominator phase on scaled coefficients e_k = d_k T^k.
    double T = 1.0;
    for (double p : params) T = std::max(T, std::abs(p));
    std::vector<double> e(5, 0.0);
    for (int k = 0; k <= std::min(h.den().degree(), 4); ++k) e[static_cast<std::size_t>(k)] = h.den()[k] * std::pow(T, k);
    auto to_den = [&](const std::vector<double>& s) {
        std::vector<double> c(5);
        for (std::size_t k = 0; k < 5; ++k) c[k] = s[k] / std::pow(T, static_cast<double>(k));
        return Polynomial(std::move(c));
    };

    const double steps[] = {0.5, 0.2, 0.1, 0.05, 0.02, 0.01};
    int rounds = 0;
    for (double step : steps) {
        bool improved = true;
        while (improved && rounds < opts.denominator_rounds) {
            improved = false;
            ++rounds;
            double scale = 0.0;
            for (double v : e) scale = std::max(scale, std::abs(v));
            std::vector<double> best_e;
            NumeratorSolution best_move = best;
            int best_k = -1;
            double best_delta = 0.0;
            for (std::size_t k = 0; k < 5; ++k) {
                for (double dir : {1.0, -1.0}) {
                    auto cand = e;
                    cand[k] += dir * step * scale;
                    const Polynomial d = to_den(cand);
                    if (d.degree() > 4 || !is_positive(d)) continue;
                    const auto s = solve_numerator(d, params, pattern);
                    if (s.tau > best_move.tau + 1e-12) {
                        best_move = s;
                        best_e = std::move(cand);
                        best_k = static_cast<int>(k);
                        best_delta = dir * step * scale / std::pow(T, static_cast<double>(k));
                    }
                }
            }
            if (best_k < 0) break;
            e = std::move(best_e);
            best = best_move;
            improved = true;
            res.trace.push_back("denominator t^" + std::to_string(best_k) + " coefficient " +
                                (best_delta >= 0 ? "+" : "") + fmt(best_delta) + ": margin " + fmt(best.tau));
            if (accept(best)) return res;
        }
    }
    std::ostringstream os;
    os << "pattern infeasible at degree 2/4 within budget (best margin " << best.tau << ")";
    fail(ErrorKind::infeasible, os.str());
}

SynthResult synthesize_height(const std::vector<DoublePoint>& dps, const SignPattern& pattern,
                              const SynthOptions& opts) {
    const auto params = crossing_parameters(dps);
    check_pattern(pattern, params.size());
    check_consistent(pattern);
    if (dps.empty() || pattern.constraints.empty())
        return {RationalFunction(Polynomial::constant(1.0), Polynomial::constant(1.0)), {}, {"no constraints"}};

    Rng rng(opts.seed);
    auto attempt = [&](const SeedAssignment& a, std::string label) -> std::optional<SynthResult> {
        const RationalFunction seed = seed_height(a);
        try {
            const double margin = default_lift_margin(seed, opts);
            const RationalFunction lifted = lift_denominator(seed, margin);
            SynthResult r = repair(lifted, dps, pattern, opts);
            std::vector<std::string> trace{std::move(label) + ": " + picks_string(a), "lift denominator by " + fmt(margin)};
            trace.insert(trace.end(), r.trace.begin(), r.trace.end());
            r.trace = std::move(trace);
            return r;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::infeasible || e.kind() == ErrorKind::invalid_input) return std::nullopt;
            throw;
        }
    };

    auto order = seed_assignments(choose_separators(params, 6));
    if (opts.seed != 0) rng.shuffle(order);
    for (std::size_t k = 0; k < order.size(); ++k)
        if (auto r = attempt(order[k], "seed " + std::to_string(k))) return *r;

    const double lo = params.front() - (params.size() > 1 ? params[1] - params[0] : 1.0);
    const double hi = params.back() + (params.size() > 1 ? params.back() - params[params.size() - 2] : 1.0);
    for (int r = 0; r < opts.restarts; ++r) {
        std::vector<double> seps(6);
        for (double& s : seps) s = rng.uniform(lo, hi);
        std::sort(seps.begin(), seps.end());
        auto all = seed_assignments(seps);
        if (auto res = attempt(all[rng.below(all.size())], "restart " + std::to_string(r))) return *res;
    }
    fail(ErrorKind::infeasible, "pattern infeasible at degree 2/4 within budget");
}

bool exceeds_minimal(DegreePair d) { return d.q > 4 || (d.q == 4 && d.p > 2); }

Parameterization reduce_coordinate(const Parameterization& p, Axis axis, KnotType target, const SynthOptions& opts,
                                   std::vector<std::string>* log) {
    auto note = [&](const std::string& s) {
        if (log) log->push_back(s);
    };
    Axis keep[2];
    {
        int k = 0;
        for (Axis a : {Axis::x, Axis::y, Axis::z})
            if (a != axis) keep[k++] = a;
    }
    const auto& f = p.coord(keep[0]);
    const auto& g = p.coord(keep[1]);
    const auto& old = p.coord(axis);
    const std::string view = "(" + std::string(to_string(keep[0])) + ", " + std::string(to_string(keep[1])) + ")";
    if (!is_regular(f, g, opts.solver.tol))
        fail(ErrorKind::degenerate, "projection " + view + " is not regular");

    const auto dps = double_points(f, g, opts.solver);
    note("replace " + std::string(to_string(axis)) + ": projection " + view + " has " + std::to_string(dps.size()) +
         " crossings (" + std::to_string(2 * dps.size()) + " double-point parameters)");

    std::vector<SignPattern> candidates;
    try {
        const auto cs = assign_over_under(old, dps);
        if (identify(diagram_from_crossings(dps, cs)) == target) {
            candidates.push_back(pattern_of(cs, dps));
            note("pattern induced by the current " + std::string(to_string(axis)) + " identifies as " +
                 std::string(to_string(target)));
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::degenerate) throw;
    }
    for (auto& pat : enumerate_patterns(dps, target, opts.pattern_limit))
        if (std::find(candidates.begin(), candidates.end(), pat) == candidates.end()) candidates.push_back(std::move(pat));
    if (candidates.empty())
        fail(ErrorKind::infeasible, "no over/under pattern on " + view + " identifies as " + std::string(to_string(target)));

    std::string last_error;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        try {
            const auto res = synthesize_height(dps, candidates[k], opts);
            Parameterization out = p;
            out.coord(axis) = res.h;
            if (axis == Axis::z) out.z = res.h;
            const auto id = identify_curve(out, opts.solver);
            if (id.knot != target) {
                last_error = "candidate identifies as " + std::string(to_string(id.knot));
                continue;
            }
            note("pattern " + std::to_string(k) + ": " + to_string(candidates[k]));
            note("new " + std::string(to_string(axis)) + " = " + to_string(res.h));
            return out;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::infeasible && e.kind() != ErrorKind::degenerate) throw;
            last_error = e.what();
        }
    }
    fail(ErrorKind::infeasible, "no degree-2/4 replacement for " + std::string(to_string(axis)) +
                                    " within budget (last: " + last_error + ")");
}

Reduction reduce_to_minimal(const Parameterization& p, KnotType target, const SynthOptions& opts,
                            const std::optional<SignPattern>& pattern) {
    auto is_minimal = [](const Parameterization& c) {
        return c.z && !exceeds_minimal(c.x.degree()) && !exceeds_minimal(c.y.degree()) &&
               !exceeds_minimal(c.z->degree());
    };
    if (is_minimal(p)) return {p, {"already minimal: " + to_string(degree_sequence(p.x, p.y, *p.z))}};

    std::string last_error;
    for (int attempt = 0; attempt < std::max(1, opts.pipeline_attempts); ++attempt) {
        SynthOptions o = opts;
        o.seed = opts.seed + static_cast<std::uint64_t>(attempt) * 1000003ULL;
        Reduction red;
        red.log.push_back("attempt " + std::to_string(attempt) + " (seed " + std::to_string(o.seed) + ")");
        try {
            Parameterization cur = p;
            if (!cur.z) {
                const auto dps = double_points(cur.x, cur.y, o.solver);
                SignPattern pat;
                if (pattern) {
                    pat = *pattern;
                } else {
                    auto pats = enumerate_patterns(dps, target, 1);
                    if (pats.empty())
                        fail(ErrorKind::infeasible, "no pattern on the x-y projection identifies as " +
                                                        std::string(to_string(target)));
                    pat = pats.front();
                }
                const auto dg = diagram_from_crossings(dps, crossings_from_pattern(dps, pat));
                if (identify(dg) != target)
                    fail(ErrorKind::invalid_input, "the given pattern does not identify as " +
                                                       std::string(to_string(target)));
                const auto res = synthesize_height(dps, pat, o);
                cur.z = res.h;
                red.log.push_back("synthesize z on the x-y projection (" + std::to_string(dps.size()) +
                                  " crossings): z = " + to_string(res.h));
            } else {
                const auto id = identify_curve(cur, o.solver);
                if (id.knot != target)
                    fail(ErrorKind::invalid_input, "input curve identifies as " + std::string(to_string(id.knot)));
            }

            std::vector<Axis> order;
            for (Axis a : {Axis::z, Axis::y, Axis::x})
                if (exceeds_minimal(cur.coord(a).degree())) order.push_back(a);
            std::stable_sort(order.begin(), order.end(), [&](Axis a, Axis b) {
                const auto da = cur.coord(a).degree();
                const auto db = cur.coord(b).degree();
                return da.q != db.q ? da.q > db.q : da.p > db.p;
            });
            for (Axis a : order) cur = reduce_coordinate(cur, a, target, o, &red.log);

            const auto id = identify_curve(cur, o.solver);
            if (id.knot != target) fail(ErrorKind::infeasible, "final curve identifies as " + std::string(to_string(id.knot)));
            red.log.push_back("result: degree sequence " + to_string(degree_sequence(cur.x, cur.y, *cur.z)) +
                              ", identifies as " + std::string(to_string(id.knot)));
            red.curve = std::move(cur);
            return red;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::infeasible && e.kind() != ErrorKind::degenerate) throw;
            last_error = e.what();
        }
    }
    fail(ErrorKind::infeasible, "reduction failed within budget: " + last_error);
}

}  // namespace knotforge
