// Serial reference vs OpenMP kernels for the posterior draws and the full
// per-dataset analysis.

#include <benchmark/benchmark.h>

#include "contra/interval.hpp"
#include "contra/pipeline.hpp"
#include "contra/posterior.hpp"

namespace {

const contra::GroupSummary kControl{86, 20, 46};
const contra::GroupSummary kExperiment{434, 129, 40};

void BM_RelativeDraws(benchmark::State& state, contra::Execution exec) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto d = contra::draw_relative_dm(kControl, kExperiment, k, 42, exec);
    benchmark::DoNotOptimize(d.relative.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Summarize(benchmark::State& state) {
  const auto d = contra::draw_relative_dm(kControl, kExperiment,
                                          static_cast<std::size_t>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(contra::summarize_draws(d, 0.05 / 3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AnalyzeTpc(benchmark::State& state, contra::Execution exec) {
  const auto ds = contra::bundled_dataset("tpc");
  const contra::AnalysisOptions opts{static_cast<std::size_t>(state.range(0)), 42, exec};
  for (auto _ : state) benchmark::DoNotOptimize(contra::analyze(ds, opts));
}

}  // namespace

BENCHMARK_CAPTURE(BM_RelativeDraws, serial, contra::Execution::serial)
    ->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RelativeDraws, parallel, contra::Execution::parallel)
    ->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Summarize)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AnalyzeTpc, serial, contra::Execution::serial)
    ->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AnalyzeTpc, parallel, contra::Execution::parallel)
    ->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
