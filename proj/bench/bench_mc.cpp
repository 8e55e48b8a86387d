// Serial reference vs. the OpenMP block kernel on the two experiment tasks.

#include <benchmark/benchmark.h>

#include "telegraph/functionals.hpp"
#include "telegraph/mc_engine.hpp"

using namespace telegraph;

namespace {

const ObservableSpec kSpec = experiment_observable(0.3, 20.0);

double telegraph_task(RngStream& rng) {
    const TelegraphPath path = sample_sym_path(20.0, 1.0, 1.0, SimVariant::Alternating, rng);
    return exact_functional(path, kSpec, 1.0, 1.0);
}

double brownian_task(RngStream& rng) {
    return brownian_grid_functional(kSpec, 1.0 / 20.0, 0.0, 1.0, 1000, 1.0, rng);
}

template <double (*Task)(RngStream&)>
void BM_Serial(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mc_estimate_serial(Task, n, 1));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <double (*Task)(RngStream&)>
void BM_Parallel(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(mc_estimate(Task, n, 1, 0, workers));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

}  // namespace

BENCHMARK(BM_Serial<telegraph_task>)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel<telegraph_task>)
    ->ArgsProduct({{1 << 16}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_Serial<brownian_task>)->Arg(1 << 13)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel<brownian_task>)
    ->ArgsProduct({{1 << 13}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
