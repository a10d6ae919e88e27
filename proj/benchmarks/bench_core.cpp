#include "flagflow/flagflow.hpp"

#include <benchmark/benchmark.h>

using namespace flagflow;

namespace {

void BM_CompactifyU1(benchmark::State& state)
{
    const VectorField vf = polynomial_field(make_model(Family::TypeI, 3, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(compactified_field(vf, ChartId::U1));
    }
}
BENCHMARK(BM_CompactifyU1);

void BM_InfinityEquilibria(benchmark::State& state)
{
    const VectorField vf = polynomial_field(make_model(Family::TypeII, 2, 4));
    for (auto _ : state) {
        benchmark::DoNotOptimize(infinity_equilibria(vf));
    }
}
BENCHMARK(BM_InfinityEquilibria);

void BM_IntegrateCompactified(benchmark::State& state)
{
    const FlagModel md = make_model(Family::TypeI, 2, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_compactified(md, 1.0, 3.0));
    }
}
BENCHMARK(BM_IntegrateCompactified)->Unit(benchmark::kMicrosecond);

// Grid side length as the argument; single-threaded so timings are comparable.
void BM_BasinSweep(benchmark::State& state)
{
    const FlagModel md = make_model(Family::TypeII, 1, 3);
    const auto n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(basin_sweep(md, GridSpec{0.0, 5.0, 0.0, 5.0, n, n}, {}, 1));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_BasinSweep)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
