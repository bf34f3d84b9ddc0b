#include <benchmark/benchmark.h>

#include "batchbandit/policies.hpp"
#include "batchbandit/rng.hpp"

namespace {

using namespace batchbandit;

void BM_ts_decide(benchmark::State& state) {
  const auto arms = static_cast<std::size_t>(state.range(0));
  ThompsonSampling policy(arms);
  Rng rng(42);
  for (std::size_t a = 0; a < arms; ++a) {
    policy.update(a, a % 2 == 0 ? 1.0 : 0.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(policy.decide(rng));
  }
}
BENCHMARK(BM_ts_decide)->Arg(2)->Arg(4)->Arg(16);

void BM_ucb1_decide(benchmark::State& state) {
  const auto arms = static_cast<std::size_t>(state.range(0));
  Ucb1 policy(arms);
  Rng rng(42);
  for (std::size_t a = 0; a < arms; ++a) {
    policy.update(a, 1.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(policy.decide(rng));
  }
}
BENCHMARK(BM_ucb1_decide)->Arg(2)->Arg(4)->Arg(16);

void BM_ts_update(benchmark::State& state) {
  ThompsonSampling policy(4);
  std::size_t arm = 0;
  for (auto _ : state) {
    policy.update(arm, arm % 2 == 0 ? 1.0 : 0.0);
    arm = (arm + 1) % 4;
  }
}
BENCHMARK(BM_ts_update);

void BM_beta_draw(benchmark::State& state) {
  Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.beta(3.5, 2.5));
  }
}
BENCHMARK(BM_beta_draw);

}  // namespace
