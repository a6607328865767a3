// Serial vs OpenMP sweep over the mass ratio and the oblateness.
#include <benchmark/benchmark.h>

#include "prtbp/sweep.hpp"

using namespace prtbp;

namespace {

const SystemParams kBase{0.02, 0.999, 0.0005, std::nullopt, 1e-5};

SweepSpec spec_for(int which, long steps) {
    if (which == 0) return {SweepParam::mu, 0.001, 0.06, static_cast<int>(steps)};
    return {SweepParam::a2, 0.0, 0.01, static_cast<int>(steps)};
}

void BM_SweepSerial(benchmark::State& state) {
    const SweepSpec spec = spec_for(static_cast<int>(state.range(0)), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(kBase, spec, Branch::L4));
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_SweepParallel(benchmark::State& state) {
    const SweepSpec spec = spec_for(static_cast<int>(state.range(0)), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_parallel(kBase, spec, Branch::L4));
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

} // namespace

BENCHMARK(BM_SweepSerial)->ArgsProduct({{0, 1}, {64, 512}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->ArgsProduct({{0, 1}, {64, 512}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
