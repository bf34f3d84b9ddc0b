#include <doctest.h>

#include <stdexcept>

#include "batchbandit/experiments.hpp"
#include "batchbandit/sweep.hpp"

using namespace batchbandit;

namespace {

SweepConfig small_sweep() {
  SweepConfig config;
  config.env = preset_environment("env1");
  config.policy.kind = "ts";
  config.requested_horizon = 60;
  config.batch_sizes = {1, 4, 12};
  config.replicates = 2;
  config.master_seed = 99;
  config.modes = {Mode::kOnline, Mode::kBatched, Mode::kShort};
  config.threads = 2;
  return config;
}

}  // namespace

TEST_CASE("sweep produces one run per (batch size, mode, replicate)") {
  const SweepResult result = run_sweep(small_sweep());
  CHECK(result.runs.size() == 3 * 3 * 2);
  CHECK(result.cells.size() == 3 * 3);

  // Record order is (batch index, mode index, replicate).
  CHECK(result.runs[0].batch_size == 1);
  CHECK(result.runs[0].mode == Mode::kOnline);
  CHECK(result.runs[0].replicate == 0);
  CHECK(result.runs[1].replicate == 1);
  CHECK(result.runs[2].mode == Mode::kBatched);
  CHECK(result.runs.back().batch_size == 12);
  CHECK(result.runs.back().mode == Mode::kShort);
}

TEST_CASE("sweeps are deterministic regardless of thread count") {
  SweepConfig config = small_sweep();
  config.replicates = 5;
  const SweepResult a = run_sweep(config);
  config.threads = 1;
  const SweepResult b = run_sweep(config);
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].seed == b.runs[i].seed);
    CHECK(a.runs[i].final_regret == b.runs[i].final_regret);
    CHECK(a.runs[i].total_reward == b.runs[i].total_reward);
  }
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].regret.mean == b.cells[i].regret.mean);
    CHECK(a.cells[i].regret.sd == b.cells[i].regret.sd);
  }
}

TEST_CASE("sweep runs match individually driven runs with the derived seeds") {
  const SweepConfig config = small_sweep();
  const SweepResult result = run_sweep(config);
  const Environment env = make_environment(config.env);

  for (const RunRecord& record : result.runs) {
    std::size_t batch_index = 0;
    for (std::size_t i = 0; i < config.batch_sizes.size(); ++i) {
      if (config.batch_sizes[i] == record.batch_size) {
        batch_index = i;
      }
    }
    CHECK(record.seed ==
          sweep_run_seed(config.master_seed, batch_index, record.replicate, record.mode));

    auto policy = make_policy(config.policy, env.arms());
    RunOptions options;
    options.record_rules = false;
    const Trajectory traj =
        run_mode(*policy, env, make_grid(config.requested_horizon, record.batch_size),
                 record.mode, record.seed, options);
    CHECK(traj.final_regret() == record.final_regret);
    CHECK(traj.total_reward == record.total_reward);
  }
}

TEST_CASE("cell summaries aggregate their own records") {
  const SweepConfig config = small_sweep();
  const SweepResult result = run_sweep(config);
  const std::size_t per_batch = config.modes.size() * config.replicates;
  for (std::size_t ci = 0; ci < result.cells.size(); ++ci) {
    const CellSummary& cell = result.cells[ci];
    const std::size_t bi = ci / config.modes.size();
    const std::size_t mi = ci % config.modes.size();
    double sum = 0.0;
    for (std::size_t r = 0; r < config.replicates; ++r) {
      sum += result.runs[bi * per_batch + mi * config.replicates + r].final_regret;
    }
    CHECK(cell.regret.mean == doctest::Approx(sum / config.replicates).epsilon(1e-12));
    CHECK(cell.replicates == config.replicates);
  }
}

TEST_CASE("sweep validates its configuration") {
  SweepConfig config = small_sweep();
  config.batch_sizes.clear();
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);

  config = small_sweep();
  config.replicates = 0;
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);

  config = small_sweep();
  config.batch_sizes = {100};  // longer than the horizon
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);

  config = small_sweep();
  config.policy.kind = "nope";
  CHECK_THROWS_AS(run_sweep(config), std::invalid_argument);
}
