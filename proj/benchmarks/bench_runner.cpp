#include <benchmark/benchmark.h>

#include "batchbandit/experiments.hpp"
#include "batchbandit/runner.hpp"

namespace {

using namespace batchbandit;

void run_steps(benchmark::State& state, const char* kind, Mode mode) {
  const auto horizon = static_cast<std::size_t>(state.range(0));
  const auto batch = static_cast<std::size_t>(state.range(1));
  const Environment env = make_environment(preset_environment("env1"));
  const BatchGrid grid = make_grid(horizon, batch);
  PolicySpec spec;
  spec.kind = kind;
  RunOptions options;
  options.record_rules = false;

  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto policy = make_policy(spec, env.arms());
    benchmark::DoNotOptimize(run_mode(*policy, env, grid, mode, seed++, options));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(grid.horizon));
}

void BM_run_online_ts(benchmark::State& state) { run_steps(state, "ts", Mode::kOnline); }
void BM_run_batched_ts(benchmark::State& state) { run_steps(state, "ts", Mode::kBatched); }
void BM_run_short_ts(benchmark::State& state) { run_steps(state, "ts", Mode::kShort); }
void BM_run_batched_ucb1(benchmark::State& state) { run_steps(state, "ucb1", Mode::kBatched); }

BENCHMARK(BM_run_online_ts)->Args({2048, 1});
BENCHMARK(BM_run_batched_ts)->Args({2048, 16})->Args({2048, 64});
BENCHMARK(BM_run_short_ts)->Args({2048, 16});
BENCHMARK(BM_run_batched_ucb1)->Args({2048, 16});

}  // namespace

BENCHMARK_MAIN();
