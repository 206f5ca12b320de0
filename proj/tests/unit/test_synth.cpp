#include <gtest/gtest.h>

#include <random>

#include "knotforge/cli/fixtures.hpp"
#include "knotforge/error.hpp"
#include "knotforge/synth.hpp"
#include "oracles.hpp"

using namespace knotforge;

namespace {

Parameterization fixture(const char* name) { return cli::curve_fixture(name)->curve; }

const std::vector<DoublePoint>& trefoil_dps() {
    static const auto dps = [] {
        const auto c = fixture("trefoil_xy");
        return double_points(c.x, c.y);
    }();
    return dps;
}

const std::vector<DoublePoint>& fig8_dps() {
    static const auto dps = [] {
        const auto c = fixture("fig8_xy");
        return double_points(c.x, c.y);
    }();
    return dps;
}

const RationalFunction h1(Polynomial{3.2, 3.1, 1}, Polynomial{3.9685, -1.6, -0.1, 2.745, 0.981});
const RationalFunction hr1(Polynomial{2.2, 3.1, 1}, Polynomial{-0.0375, 0.4, -0.1, -1.6, 1});
const RationalFunction hr2(Polynomial{2.2, 3.1, 1}, Polynomial{1.9625, 0.4, -0.1, -1.6, 1});

SeedAssignment reference_picks() {
    return {{-2, -1.1, -0.5, 0.1, 0.5, 1.5}, {0, 1}, {2, 3, 4, 5}};
}

void expect_valid(const SynthResult& r, const std::vector<DoublePoint>& dps, const SignPattern& p, double min_margin) {
    EXPECT_TRUE(is_positive(r.h.den()));
    EXPECT_EQ(sturm_count(r.h.den()), 0);
    EXPECT_LE(r.h.num().degree(), 2);
    EXPECT_LE(r.h.den().degree(), 4);
    ASSERT_EQ(r.margins.size(), p.constraints.size());
    for (double m : r.margins) EXPECT_GE(m, min_margin);
    EXPECT_TRUE(satisfies(r.h, dps, p).ok);
}

}  // namespace

TEST(ChooseSeparators, TrefoilInterleavesLikeReferenceChoice) {
    const auto params = crossing_parameters(trefoil_dps());
    const auto seps = choose_separators(params);
    ASSERT_EQ(seps.size(), 6u);
    const auto reference = reference_picks().separators;
    auto gap = [&](double x) { return std::upper_bound(params.begin(), params.end(), x) - params.begin(); };
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(gap(seps[k]), gap(reference[k]));
    EXPECT_NEAR(seps[0], params[0] - (params[1] - params[0]), 1e-12);
}

TEST(ChooseSeparators, TwoParameters) {
    const std::vector<double> p{0, 1};
    EXPECT_EQ(choose_separators(p), (std::vector<double>{-1, 0.5}));
    EXPECT_EQ(choose_separators(p, 3), (std::vector<double>{-1, 0.5, 2}));
}

TEST(ChooseSeparators, TranslationEquivariant) {
    const auto params = crossing_parameters(fig8_dps());
    std::vector<double> shifted(params);
    for (auto& v : shifted) v += 3.25;
    const auto a = choose_separators(params, 6), b = choose_separators(shifted, 6);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(b[k], a[k] + 3.25, 1e-12);
}

TEST(SeedAssignments, FifteenSplits) {
    const auto all = seed_assignments(reference_picks().separators);
    EXPECT_EQ(all.size(), 15u);
    for (const auto& a : all) {
        EXPECT_EQ(a.numerator_picks.size(), 2u);
        EXPECT_EQ(a.denominator_picks.size(), 4u);
    }
}

TEST(SeedHeight, ReferencePicks) {
    const auto h = seed_height(reference_picks());
    const Polynomial num{2.2, 3.1, 1}, den{-0.0375, 0.4, -0.1, -1.6, 1};
    for (int k = 0; k <= 2; ++k) EXPECT_NEAR(h.num()[k], num[k], 1e-12);
    for (int k = 0; k <= 4; ++k) EXPECT_NEAR(h.den()[k], den[k], 1e-12);
    const auto roots = real_roots(h.den());
    EXPECT_EQ(roots.size(), 4u);
}

TEST(SeedHeight, WrongSplitRejected) {
    SeedAssignment a{{-2, -1.1, -0.5, 0.1, 0.5, 1.5}, {0, 1, 2, 3}, {4, 5}};
    EXPECT_THROW(seed_height(a), Error);
    a = {{-2, -1.1, -0.5, 0.1, 0.5, 1.5}, {0, 1}, {1, 3, 4, 5}};
    EXPECT_THROW(seed_height(a), Error);
}

TEST(LiftDenominator, ReferenceLift) {
    const auto lifted = lift_denominator(hr1, 2.0);
    const Polynomial want{1.9625, 0.4, -0.1, -1.6, 1};
    for (int k = 0; k <= 4; ++k) EXPECT_NEAR(lifted.den()[k], want[k], 1e-12);
    EXPECT_TRUE(is_positive(lifted.den()));
    EXPECT_EQ(lifted.num(), hr1.num());
}

TEST(LiftDenominator, StrictMargin) {
    const RationalFunction h(Polynomial{0, 0, 1}, Polynomial{-1, 0, 0, 0, 1});
    EXPECT_THROW(lift_denominator(h, 1.0), Error);
    try {
        lift_denominator(h, 0.5);
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("must exceed 1"), std::string::npos);
    }
    const auto lifted = lift_denominator(h, 2.0);
    EXPECT_EQ(lifted.den(), (Polynomial{1, 0, 0, 0, 1}));
    EXPECT_EQ(sturm_count(lifted.den()), 0);
}

TEST(LiftDenominator, OnlyConstantTermChanges) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int it = 0; it < 100; ++it) {
        const RationalFunction h(Polynomial{u(rng), u(rng), u(rng)}, Polynomial{u(rng), u(rng), u(rng), u(rng), 1});
        const double margin = -global_min(h.den()).value + 0.5;
        const auto l = lift_denominator(h, margin);
        EXPECT_EQ(l.num(), h.num());
        EXPECT_DOUBLE_EQ(l.den()[0], h.den()[0] + margin);
        for (int k = 1; k <= 4; ++k) EXPECT_EQ(l.den()[k], h.den()[k]);
    }
}

TEST(GapVector, ReferenceHeights) {
    const auto& dps = trefoil_dps();
    const auto p = *cli::pattern_fixture("3_1");
    const auto params = crossing_parameters(dps);
    const auto g = gap_vector(hr2, dps, p);
    ASSERT_EQ(g.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& c = p.constraints[k];
        EXPECT_DOUBLE_EQ(g[k], hr2(params[c.i - 1]) - hr2(params[c.j - 1]));
    }
    const auto good = gap_vector(h1, dps, p);
    EXPECT_GT(good[0], 0);
    EXPECT_LT(good[1], 0);
    EXPECT_GT(good[2], 0);
    EXPECT_TRUE(gap_vector(h1, dps, {}).empty());
}

TEST(Repair, FromReferenceLiftedSeed) {
    const auto& dps = trefoil_dps();
    const auto p = *cli::pattern_fixture("3_1");
    const SynthOptions opts;
    const auto r = repair(hr2, dps, p, opts);
    expect_valid(r, dps, p, opts.min_margin);
    EXPECT_FALSE(r.trace.empty());
    EXPECT_EQ(identify(diagram_from_crossings(dps, assign_over_under(r.h, dps))), KnotType::k3_1);
}

TEST(Repair, SatisfiedPatternIsFixedPoint) {
    const auto& dps = trefoil_dps();
    const auto p = *cli::pattern_fixture("3_1");
    const auto r = repair(h1, dps, p, {});
    EXPECT_EQ(r.h, h1);
    EXPECT_TRUE(r.trace.empty());
}

TEST(Repair, SingleConstraintNeedsOnlyNumerator) {
    DoublePoint dp;
    dp.s = 0;
    dp.t = 1;
    const std::vector<DoublePoint> dps{dp};
    const SignPattern p{{{1, 2, Relation::greater}}};
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-3, 3), w(0.2, 2);
    for (int it = 0; it < 20; ++it) {
        const double a = u(rng), b = w(rng), c = u(rng), d = w(rng);
        const Polynomial den = Polynomial{a * a + b * b, -2 * a, 1} * Polynomial{c * c + d * d, -2 * c, 1};
        const RationalFunction start(Polynomial{0, 1}, den);
        const auto r = repair(start, dps, p, {});
        EXPECT_GT(r.h(0), r.h(1));
        EXPECT_EQ(r.h.den(), den);
        if (start(0) <= start(1)) {
            ASSERT_EQ(r.trace.size(), 1u);
            EXPECT_NE(r.trace[0].find("numerator LP"), std::string::npos);
        }
    }
}

TEST(Repair, ContradictoryPatternInfeasible) {
    const auto& dps = trefoil_dps();
    SignPattern p = *cli::pattern_fixture("3_1");
    p.constraints.push_back({1, 4, Relation::less});
    try {
        repair(hr2, dps, p, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::infeasible);
    }
}

TEST(Repair, RequiresPositiveDenominator) { EXPECT_THROW(repair(hr1, trefoil_dps(), {}, {}), Error); }

TEST(NumeratorPhase, Linearity) {
    const auto& dps = fig8_dps();
    const auto p = *cli::pattern_fixture("4_1");
    const Polynomial den{2000, -90, -50, 0.5, 1};
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> c(-100, 100), l(-2, 2);
    for (int it = 0; it < 50; ++it) {
        const std::vector<double> u{c(rng), c(rng), c(rng)}, v{c(rng), c(rng), c(rng)};
        const double lam = l(rng);
        std::vector<double> mix(3);
        for (int k = 0; k < 3; ++k) mix[k] = lam * u[k] + (1 - lam) * v[k];
        const auto cu = numerator_constraint_values(den, u, dps, p);
        const auto cv = numerator_constraint_values(den, v, dps, p);
        const auto cm = numerator_constraint_values(den, mix, dps, p);
        for (std::size_t k = 0; k < cm.size(); ++k) {
            const double want = lam * cu[k] + (1 - lam) * cv[k];
            EXPECT_NEAR(cm[k], want, 1e-9 * (1 + std::abs(cu[k]) + std::abs(cv[k])));
        }
    }
}

TEST(SynthesizeHeight, Trefoil) {
    const auto& dps = trefoil_dps();
    const auto p = *cli::pattern_fixture("3_1");
    const SynthOptions opts;
    const auto r = synthesize_height(dps, p, opts);
    expect_valid(r, dps, p, opts.min_margin);
    const auto t = fixture("trefoil_xy");
    EXPECT_EQ(identify(build_diagram(t.x, t.y, r.h, dps)), KnotType::k3_1);
}

TEST(SynthesizeHeight, FigureEight) {
    const auto& dps = fig8_dps();
    const auto p = *cli::pattern_fixture("4_1");
    const SynthOptions opts;
    const auto r = synthesize_height(dps, p, opts);
    expect_valid(r, dps, p, opts.min_margin);
    const auto t = fixture("fig8_xy");
    EXPECT_EQ(identify(build_diagram(t.x, t.y, r.h, dps)), KnotType::k4_1);
}

TEST(SynthesizeHeight, EmptyIsConstant) {
    const auto r = synthesize_height({}, {}, {});
    EXPECT_EQ(r.h.num().degree(), 0);
    EXPECT_EQ(r.h.den().degree(), 0);
    EXPECT_TRUE(r.margins.empty());
}

TEST(SynthesizeHeight, SameSeedSameResult) {
    SynthOptions opts;
    opts.seed = 77;
    const auto p = *cli::pattern_fixture("4_1");
    const auto a = synthesize_height(fig8_dps(), p, opts);
    const auto b = synthesize_height(fig8_dps(), p, opts);
    EXPECT_EQ(a.h, b.h);
    EXPECT_EQ(a.trace, b.trace);
}

TEST(SynthesizeHeight, InvariantsAcrossSeeds) {
    const auto pt = *cli::pattern_fixture("3_1");
    const auto pf = *cli::pattern_fixture("4_1");
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        SynthOptions opts;
        opts.seed = seed;
        expect_valid(synthesize_height(trefoil_dps(), pt, opts), trefoil_dps(), pt, opts.min_margin);
        expect_valid(synthesize_height(fig8_dps(), pf, opts), fig8_dps(), pf, opts.min_margin);
    }
}

TEST(SynthesizeHeight, ScalingPreservesGaussCode) {
    const auto& dps = fig8_dps();
    const auto r = synthesize_height(dps, *cli::pattern_fixture("4_1"), {});
    const auto base = gauss_string(diagram_from_crossings(dps, assign_over_under(r.h, dps)));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lc(-6, 6);
    for (int it = 0; it < 30; ++it) {
        const double c = std::exp(lc(rng));
        const RationalFunction scaled(r.h.num() * Polynomial{c}, r.h.den());
        EXPECT_EQ(gauss_string(diagram_from_crossings(dps, assign_over_under(scaled, dps))), base);
    }
}

TEST(ExceedsMinimal, Bounds) {
    EXPECT_FALSE(exceeds_minimal({2, 4}));
    EXPECT_FALSE(exceeds_minimal({0, 0}));
    EXPECT_TRUE(exceeds_minimal({3, 4}));
    EXPECT_TRUE(exceeds_minimal({6, 6}));
    EXPECT_TRUE(exceeds_minimal({0, 6}));
}

TEST(ReduceCoordinate, ReplacingMinimalCoordinateKeepsBound) {
    const auto t = fixture("trefoil_xyz");
    const auto out = reduce_coordinate(t, Axis::z, KnotType::k3_1, {}, nullptr);
    EXPECT_FALSE(exceeds_minimal(out.z->degree()));
    EXPECT_EQ(identify_curve(out).knot, KnotType::k3_1);
}

TEST(ReduceCoordinate, FigureEightReplaceY) {
    auto p = fixture("fig8_xy");
    p.z = synthesize_height(fig8_dps(), *cli::pattern_fixture("4_1"), {}).h;
    std::vector<std::string> log;
    const auto out = reduce_coordinate(p, Axis::y, KnotType::k4_1, {}, &log);
    EXPECT_FALSE(exceeds_minimal(out.y.degree()));
    EXPECT_EQ(out.x, p.x);
    EXPECT_EQ(out.z, p.z);
    EXPECT_EQ(identify_curve(out).knot, KnotType::k4_1);
    EXPECT_FALSE(log.empty());
}

TEST(ReduceToMinimal, FigureEight) {
    const auto red = reduce_to_minimal(fixture("fig8_xy"), KnotType::k4_1, {}, *cli::pattern_fixture("4_1"));
    const auto& c = red.curve;
    ASSERT_TRUE(c.z.has_value());
    EXPECT_EQ(to_string(degree_sequence(c.x, c.y, *c.z)), "(2/4, 2/4, 2/4)");
    const auto id = identify_curve(c);
    EXPECT_EQ(id.knot, KnotType::k4_1);
    EXPECT_TRUE(is_compact_embedding(c, id.dps));
}

TEST(ReduceToMinimal, TrefoilNeedsOnlyZ) {
    const auto red = reduce_to_minimal(fixture("trefoil_xy"), KnotType::k3_1, {}, *cli::pattern_fixture("3_1"));
    EXPECT_EQ(red.curve.x, fixture("trefoil_xy").x);
    EXPECT_EQ(red.curve.y, fixture("trefoil_xy").y);
    EXPECT_EQ(to_string(degree_sequence(red.curve.x, red.curve.y, *red.curve.z)), "(2/4, 2/4, 2/4)");
    EXPECT_EQ(identify_curve(red.curve).knot, KnotType::k3_1);
}

TEST(ReduceToMinimal, MinimalInputUnchanged) {
    const auto t = fixture("trefoil_xyz");
    const auto red = reduce_to_minimal(t, KnotType::k3_1);
    EXPECT_EQ(red.curve.x, t.x);
    EXPECT_EQ(red.curve.y, t.y);
    EXPECT_EQ(red.curve.z, t.z);
}

TEST(ReduceToMinimal, WrongPatternRejected) {
    try {
        reduce_to_minimal(fixture("trefoil_xy"), KnotType::k4_1, {}, *cli::pattern_fixture("3_1"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
    }
}
