// Serial reference vs OpenMP execution of the Monte-Carlo kernels.
// Both paths run the same chunks with the same streams, so each pair of
// benchmarks computes identical results; only wall time differs.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "nakanc/montecarlo.hpp"

namespace {

using namespace nakanc;

RunOptions options(const benchmark::State& state) {
  RunOptions run;
  run.seed = 1;
  run.execution = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  run.workers = static_cast<int>(state.range(0));
  return run;
}

void label(benchmark::State& state, std::uint64_t items) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(state.range(0)));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * items));
}

void BM_EventOutage(benchmark::State& state) {
  const auto links = TwoPairLinks::uniform({2.0, 10.0});
  constexpr std::uint64_t kTrials = 1 << 20;
  const auto run = options(state);
  for (auto _ : state) benchmark::DoNotOptimize(montecarlo::mc_event_outage(links, {1.0}, kTrials, run));
  label(state, kTrials);
}

void BM_SnrOutage(benchmark::State& state) {
  const auto budget = LinkBudget::uniform(2.0, 10.0);
  constexpr std::uint64_t kTrials = 1 << 20;
  const auto run = options(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        montecarlo::mc_snr_outage(budget, {1.0}, kTrials, run, SnrMode::independent_links));
  label(state, kTrials);
}

void BM_Ber(benchmark::State& state) {
  const auto budget = LinkBudget::uniform(1.0, 10.0);
  const montecarlo::BerOptions opts{.symbols_per_block = 10000, .blocks = 64};
  const auto run = options(state);
  for (auto _ : state) benchmark::DoNotOptimize(montecarlo::mc_ber(budget, opts, run));
  label(state, opts.blocks * opts.symbols_per_block);
}

// Argument 0 selects the serial reference; n > 0 runs the parallel path
// with n workers.
void worker_args(benchmark::internal::Benchmark* b) {
  b->Arg(0);
  for (int w = 1; w <= omp_get_num_procs(); w *= 2) b->Arg(w);
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_EventOutage)->Apply(worker_args);
BENCHMARK(BM_SnrOutage)->Apply(worker_args);
BENCHMARK(BM_Ber)->Apply(worker_args);

BENCHMARK_MAIN();
