#include <gtest/gtest.h>

#include <random>

#include "knotforge/curve.hpp"
#include "knotforge/error.hpp"
#include "knotforge/cli/fixtures.hpp"
#include "oracles.hpp"

using namespace knotforge;

namespace {

Parameterization fixture(const char* name) { return cli::curve_fixture(name)->curve; }

RationalFunction reflect(const RationalFunction& r) {
    std::vector<double> n(r.num().coeffs().begin(), r.num().coeffs().end());
    std::vector<double> d(r.den().coeffs().begin(), r.den().coeffs().end());
    for (std::size_t k = 1; k < n.size(); k += 2) n[k] = -n[k];
    for (std::size_t k = 1; k < d.size(); k += 2) d[k] = -d[k];
    return {Polynomial(n), Polynomial(d)};
}

Polynomial positive_quartic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-4, 4), im(0.3, 3);
    const double a = re(rng), b = im(rng), c = re(rng), d = im(rng);
    return Polynomial{a * a + b * b, -2 * a, 1} * Polynomial{c * c + d * d, -2 * c, 1};
}

}  // namespace

TEST(DoublePoints, CircleHasNone) {
    const auto c = fixture("circle");
    EXPECT_TRUE(double_points(c.x, c.y).empty());
}

TEST(DoublePoints, Trefoil) {
    const auto c = fixture("trefoil_xy");
    const auto dps = double_points(c.x, c.y);
    ASSERT_EQ(dps.size(), 3u);
    const auto params = crossing_parameters(dps);
    const double reference[] = {-1.8461477, -1, -0.0629942, 0.1833158, 1, 1.9583554};
    ASSERT_EQ(params.size(), 6u);
    for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(params[k], reference[k], 1e-6);
    for (const auto& dp : dps) {
        const auto [i, j] = parameter_indices(dps, dp);
        EXPECT_EQ(j, i + 3);
        EXPECT_LT(dp.s, dp.t);
        EXPECT_LT(pair_check(c.x, c.y, dp), 1e-8);
    }
}

TEST(DoublePoints, FigureEightPairs) {
    const auto c = fixture("fig8_xy");
    const auto dps = double_points(c.x, c.y);
    ASSERT_EQ(dps.size(), 10u);
    // pairs of the reference over/under table
    std::vector<std::pair<int, int>> want{{1, 8}, {2, 9}, {3, 16}, {4, 17}, {5, 12},
                                          {6, 13}, {7, 20}, {10, 15}, {11, 18}, {14, 19}};
    std::vector<std::pair<int, int>> got;
    for (const auto& dp : dps) got.push_back(parameter_indices(dps, dp));
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want);
    for (const auto& dp : dps) EXPECT_LT(pair_check(c.x, c.y, dp), 1e-8);
}

TEST(DoublePoints, SortedBySWithIndices) {
    const auto c = fixture("fig8_xy");
    const auto dps = double_points(c.x, c.y);
    for (std::size_t k = 0; k < dps.size(); ++k) {
        EXPECT_EQ(dps[k].index, static_cast<int>(k));
        if (k) {
            EXPECT_LT(dps[k - 1].s, dps[k].s);
        }
    }
}

TEST(DoublePoints, ReversedParameterGivesMirroredPairs) {
    for (const char* name : {"trefoil_xy", "fig8_xy"}) {
        const auto c = fixture(name);
        const auto a = double_points(c.x, c.y);
        const auto b = double_points(reflect(c.x), reflect(c.y));
        ASSERT_EQ(a.size(), b.size()) << name;
        // (s, t) maps to (-t, -s)
        for (const auto& d : a) {
            const auto m = std::find_if(b.begin(), b.end(), [&](const DoublePoint& e) {
                return std::abs(e.s + d.t) < 1e-9 && std::abs(e.t + d.s) < 1e-9;
            });
            EXPECT_NE(m, b.end()) << name << " (" << d.s << ", " << d.t << ")";
        }
    }
}

TEST(DoublePoints, RandomEllipsesHaveNone) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-3, 3), pos(0.2, 4);
    for (int it = 0; it < 200; ++it) {
        const double a = pos(rng), b = pos(rng), phi = u(rng), cx = u(rng), cy = u(rng);
        const double al = pos(rng), be = u(rng);  // reparameterize t -> al t + be
        const Polynomial den = Polynomial{1 + be * be, 2 * al * be, al * al};
        const Polynomial cs = Polynomial{1 - be * be, -2 * al * be, -al * al};  // cos numerator
        const Polynomial sn = Polynomial{2 * be, 2 * al};                       // sin numerator
        const Polynomial xn = cs * Polynomial{a * std::cos(phi)} - sn * Polynomial{b * std::sin(phi)} + den * Polynomial{cx};
        const Polynomial yn = cs * Polynomial{a * std::sin(phi)} + sn * Polynomial{b * std::cos(phi)} + den * Polynomial{cy};
        ASSERT_TRUE(double_points({xn, den}, {yn, den}).empty()) << it;
    }
}

TEST(DoublePoints, RecoversSampledCrossings) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-5, 5);
    std::vector<std::pair<RationalFunction, RationalFunction>> curves;
    curves.push_back({fixture("trefoil_xy").x, fixture("trefoil_xy").y});
    curves.push_back({fixture("fig8_xy").x, fixture("fig8_xy").y});
    while (curves.size() < 12) {
        RationalFunction f(Polynomial{u(rng), u(rng), u(rng)}, positive_quartic(rng));
        RationalFunction g(Polynomial{u(rng), u(rng), u(rng)}, positive_quartic(rng));
        curves.push_back({f, g});
    }
    const double window = 8.0, inner = 7.9;
    int crossings_seen = 0;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& [f, g] = curves[c];
        std::vector<DoublePoint> dps;
        try {
            dps = double_points(f, g);
        } catch (const Error& e) {
            ASSERT_EQ(e.kind(), ErrorKind::degenerate);
            continue;
        }
        auto sampled = oracle::sampled_crossings(f, g, -window, window);
        std::erase_if(sampled, [&](const auto& s) { return std::abs(s.s) > inner || std::abs(s.t) > inner; });
        std::erase_if(dps, [&](const auto& d) { return std::abs(d.s) > inner || std::abs(d.t) > inner; });
        ASSERT_EQ(dps.size(), sampled.size()) << "curve " << c;
        for (std::size_t k = 0; k < dps.size(); ++k) {
            EXPECT_NEAR(dps[k].s, sampled[k].s, 1e-6);
            EXPECT_NEAR(dps[k].t, sampled[k].t, 1e-6);
            EXPECT_LT(pair_check(f, g, dps[k]), 1e-9);
        }
        crossings_seen += static_cast<int>(dps.size());
    }
    EXPECT_GT(crossings_seen, 13);
}

// x is even, so (s, -s) share x; y is odd with a double zero at 1, so the
// branches through t = -1 and t = 1 touch tangentially.
TEST(DoublePoints, TangentialCrossingIsDegenerate) {
    const RationalFunction x(Polynomial{0, 0, 1}, Polynomial{1, 0, 1});
    const RationalFunction y(Polynomial{0, 1, 0, -2, 0, 1}, Polynomial{1, 0, 3, 0, 3, 0, 1});
    try {
        double_points(x, y);
        FAIL() << "tangency not reported";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate);
        EXPECT_NE(std::string(e.what()).find("degenerate double point"), std::string::npos);
    }
}

// t = -1, 0, 1 all map to the origin.
TEST(DoublePoints, TriplePointIsDegenerate) {
    const RationalFunction x(Polynomial{0, 0, -1, 0, 1}, Polynomial{1, 0, 2, 0, 1});
    const RationalFunction y(Polynomial{0, -1, 0, 1}, Polynomial{1, 0, 2, 0, 1});
    try {
        double_points(x, y);
        FAIL() << "triple point not reported";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate);
    }
}

TEST(PairCheck, Examples) {
    const auto c = fixture("trefoil_xy");
    DoublePoint dp;
    dp.s = -1;
    dp.t = 1;
    EXPECT_LT(pair_check(c.x, c.y, dp), 1e-12);
    EXPECT_DOUBLE_EQ(c.x(1), 2.0);
    EXPECT_NEAR(c.y(1), 5 / 2.1, 1e-15);

    const auto circle = fixture("circle");
    dp.s = -0.5;
    dp.t = 0.7;
    EXPECT_GT(pair_check(circle.x, circle.y, dp), 1e-9);
}

TEST(IsRegular, Examples) {
    const auto circle = fixture("circle");
    EXPECT_TRUE(is_regular(circle.x, circle.y));
    const RationalFunction sq(Polynomial{0, 0, 1}, Polynomial{1});
    EXPECT_FALSE(is_regular(sq, sq));
    const auto t = fixture("trefoil_xy");
    EXPECT_TRUE(is_regular(t.x, t.y));
    // oracle: no common real root of the derivative numerators
    const auto rx = real_roots(t.x.derivative_numerator());
    const auto ry = real_roots(t.y.derivative_numerator());
    for (double a : rx)
        for (double b : ry) EXPECT_GT(std::abs(a - b), 1e-6);
}

TEST(ClosurePoint, Examples) {
    const auto t = fixture("trefoil_xyz");
    EXPECT_EQ(closure_point(t).position, (std::vector<double>{0, 0, 0}));
    const auto f8 = fixture("fig8_xy");
    EXPECT_EQ(closure_point(f8).position, (std::vector<double>{1, 1}));
    const auto c = fixture("circle");
    const auto cp = closure_point(Parameterization{c.x, c.y, std::nullopt}).position;
    EXPECT_DOUBLE_EQ(cp[0], 0);
    EXPECT_DOUBLE_EQ(cp[1], -1);
    const RationalFunction line(Polynomial{0, 1}, Polynomial{1});
    EXPECT_THROW(closure_point(Parameterization{line, line, std::nullopt}), Error);
}

TEST(Embedding, Examples) {
    const auto t = fixture("trefoil_xyz");
    const auto dps = double_points(t.x, t.y);
    EXPECT_TRUE(is_compact_embedding(t, dps));
    EXPECT_FALSE(is_compact_embedding(Parameterization{t.x, t.y, t.y}, dps));

    const RationalFunction a(Polynomial{0, 1}, Polynomial{1}), b(Polynomial{0, 0, 1}, Polynomial{1}),
        c(Polynomial{0, 0, 0, 1}, Polynomial{1});
    EXPECT_FALSE(is_compact_embedding(Parameterization{a, b, c}, {}));
    EXPECT_FALSE(is_compact_embedding(Parameterization{t.x, t.y, std::nullopt}, dps));
}

TEST(Embedding, ReportsNonCompactHeight) {
    const auto p = fixture("fig8_h2");
    const auto dps = double_points(p.x, p.y);
    const auto rep = embedding_report(p, dps);
    EXPECT_FALSE(rep.ok);
    ASSERT_FALSE(rep.issues.empty());
    EXPECT_NE(rep.issues.front().find("z"), std::string::npos);
}

TEST(DividedDifference, Identity) {
    const auto t = fixture("fig8_xy");
    const auto C = divided_difference(t.x);
    const auto& a = t.x.num();
    const auto& b = t.x.den();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int it = 0; it < 50; ++it) {
        const double s = u(rng), w = u(rng);
        double lhs = 0;
        for (std::size_t i = 0; i < C.size(); ++i)
            for (std::size_t j = 0; j < C[i].size(); ++j) lhs += C[i][j] * std::pow(s, i) * std::pow(w, j);
        const double rhs = (a(s) * b(w) - a(w) * b(s)) / (s - w);
        EXPECT_NEAR(lhs, rhs, 1e-8 * std::max(1.0, std::abs(rhs)));
    }
}
