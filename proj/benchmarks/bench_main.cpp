#include <benchmark/benchmark.h>

#include <random>

#include "knotforge/cli/fixtures.hpp"
#include "knotforge/synth.hpp"

using namespace knotforge;

namespace {

Parameterization fixture(const char* name) { return cli::curve_fixture(name)->curve; }

void BM_RealRoots(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-5, 5);
    std::vector<double> roots;
    for (int k = 0; k < state.range(0); ++k) roots.push_back(u(rng));
    const auto p = Polynomial::from_roots(roots);
    for (auto _ : state) benchmark::DoNotOptimize(real_roots(p));
}
BENCHMARK(BM_RealRoots)->Arg(4)->Arg(8)->Arg(12);

void BM_DoublePoints(benchmark::State& state, const char* name) {
    const auto c = fixture(name);
    for (auto _ : state) benchmark::DoNotOptimize(double_points(c.x, c.y));
}
BENCHMARK_CAPTURE(BM_DoublePoints, trefoil, "trefoil_xy")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_DoublePoints, fig8, "fig8_xy")->Unit(benchmark::kMillisecond);

void BM_SynthesizeHeight(benchmark::State& state, const char* name, const char* pattern) {
    const auto c = fixture(name);
    const auto dps = double_points(c.x, c.y);
    const auto p = *cli::pattern_fixture(pattern);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        SynthOptions opts;
        opts.seed = ++seed;
        benchmark::DoNotOptimize(synthesize_height(dps, p, opts));
    }
}
BENCHMARK_CAPTURE(BM_SynthesizeHeight, trefoil, "trefoil_xy", "3_1")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SynthesizeHeight, fig8, "fig8_xy", "4_1")->Unit(benchmark::kMillisecond);

void BM_Alexander(benchmark::State& state) {
    const auto c = fixture("fig8_xy");
    const auto dps = double_points(c.x, c.y);
    const auto d = diagram_from_crossings(dps, crossings_from_pattern(dps, *cli::pattern_fixture("4_1")));
    for (auto _ : state) benchmark::DoNotOptimize(alexander(d));
}
BENCHMARK(BM_Alexander)->Unit(benchmark::kMicrosecond);

void BM_Tricolor(benchmark::State& state) {
    const auto c = fixture("fig8_xy");
    const auto dps = double_points(c.x, c.y);
    const auto d = diagram_from_crossings(dps, crossings_from_pattern(dps, *cli::pattern_fixture("4_1")));
    for (auto _ : state) benchmark::DoNotOptimize(tricolor_count(d));
}
BENCHMARK(BM_Tricolor)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
