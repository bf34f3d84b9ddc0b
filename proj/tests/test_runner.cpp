#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <set>

#include "batchbandit/analysis.hpp"
#include "batchbandit/experiments.hpp"
#include "batchbandit/policies.hpp"
#include "batchbandit/runner.hpp"
#include "batchbandit/stats.hpp"

using namespace batchbandit;

namespace {

PolicySpec spec_of(std::string kind, std::map<std::string, double> params = {}) {
  PolicySpec spec;
  spec.kind = std::move(kind);
  spec.params = std::move(params);
  return spec;
}

Environment preset(const char* name) { return make_environment(preset_environment(name)); }

}  // namespace

TEST_CASE("a horizon of one yields exactly one step") {
  const Environment env = preset("env1");
  ThompsonSampling policy(2);
  const Trajectory traj = run_online(policy, env, 1, 5);
  CHECK(traj.actions.size() == 1);
  CHECK(traj.rewards.size() == 1);
  CHECK(traj.rules.size() == 1);
  CHECK(traj.pseudo_regret.size() == 1);
  CHECK(policy.rewards_consumed() == 1);
}

TEST_CASE("greedy on deterministic rewards flattens after the forced pulls") {
  EnvSpec spec;
  spec.family = RewardFamily::kBernoulli;
  spec.means = {1.0, 0.0};
  const Environment env = make_environment(spec);

  EpsilonGreedy policy(2, 0.0);
  const Trajectory traj = run_online(policy, env, 50, 3);
  // Forced pulls: arm 0 (gap 0), arm 1 (gap 1); greedy on arm 0 afterwards.
  CHECK(traj.actions[0] == 0);
  CHECK(traj.actions[1] == 1);
  CHECK(traj.pseudo_regret[1] == doctest::Approx(1.0));
  CHECK(traj.final_regret() == doctest::Approx(1.0));
  for (std::size_t t = 2; t < 50; ++t) {
    CHECK(traj.actions[t] == 0);
  }
}

TEST_CASE("uniform play matches the closed-form mean regret") {
  const Environment env = preset("env1");
  const std::size_t n = 100;
  const std::size_t reps = 1000;
  std::vector<double> regrets(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    UniformRandom policy(2);
    regrets[r] = run_online(policy, env, n, derive_seed(404, {r})).final_regret();
  }
  const Summary s = summarize(regrets);
  // Closed form: n * (sum of gaps) / K = 100 * 0.2 / 2 = 10.
  CHECK(std::abs(s.mean - 10.0) < 3.0 * s.se);
}

TEST_CASE("the three modes coincide at batch size one") {
  const char* kinds[] = {"ts", "ucb1", "egreedy", "uniform"};
  const char* envs[] = {"env1", "env4"};
  for (const char* kind : kinds) {
    for (const char* env_name : envs) {
      const Environment env = preset(env_name);
      const BatchGrid grid = make_grid(128, 1);
      const std::uint64_t seed = derive_seed(9, {std::uint64_t(kind[0]), std::uint64_t(env_name[3])});

      auto online = make_policy(spec_of(kind), env.arms());
      auto batched = make_policy(spec_of(kind), env.arms());
      auto short_p = make_policy(spec_of(kind), env.arms());
      const Trajectory to = run_mode(*online, env, grid, Mode::kOnline, seed);
      const Trajectory tb = run_mode(*batched, env, grid, Mode::kBatched, seed);
      const Trajectory ts = run_mode(*short_p, env, grid, Mode::kShort, seed);

      CHECK(same_realization(to, tb));
      CHECK(same_realization(to, ts));
      CHECK(to.mode == Mode::kOnline);
      CHECK(tb.mode == Mode::kBatched);
      CHECK(ts.mode == Mode::kShort);
    }
  }
}

TEST_CASE("a single batch spanning the horizon never updates the policy mid-run") {
  const Environment env = preset("env1");
  const BatchGrid grid = make_grid(32, 32);
  Ucb1 policy(2);
  const Trajectory traj = run_batched(policy, env, grid, 7);
  // The frozen prior state forces the lowest unpulled arm throughout.
  for (std::size_t action : traj.actions) {
    CHECK(action == 0);
  }
  // The flush at the end applies the whole batch.
  CHECK(policy.rewards_consumed() == 32);
}

TEST_CASE("point-mass policies keep one action within each frozen batch") {
  const Environment env = preset("env1");
  const BatchGrid grid = make_grid(64, 8);
  Ucb1 policy(2);
  const Trajectory traj = run_batched(policy, env, grid, 21);
  for (std::size_t j = 0; j < grid.batches; ++j) {
    const std::size_t first = traj.actions[j * 8];
    for (std::size_t s = 1; s < 8; ++s) {
      CHECK(traj.actions[j * 8 + s] == first);
    }
  }
}

TEST_CASE("short runs consume one reward per batch") {
  const Environment env = preset("env4");
  const BatchGrid grid = make_grid(96, 8);
  ThompsonSampling policy(4);
  const Trajectory traj = run_short(policy, env, grid, 77);
  CHECK(traj.actions.size() == 96);
  CHECK(policy.rewards_consumed() == grid.batches);
  std::size_t total = 0;
  for (std::size_t n : policy.pull_counts()) {
    total += n;
  }
  CHECK(total == grid.batches);
  // The repeated action within each batch.
  for (std::size_t j = 0; j < grid.batches; ++j) {
    for (std::size_t s = 1; s < 8; ++s) {
      CHECK(traj.actions[j * 8 + s] == traj.actions[j * 8]);
    }
  }
}

TEST_CASE("the short run's update subsequence replays as an online run of horizon M") {
  const Environment env = preset("env1");
  const BatchGrid grid = make_grid(64, 8);
  const std::uint64_t seed = 1234;

  ThompsonSampling policy(2);
  const Trajectory traj = run_short(policy, env, grid, seed);

  // Tape of the consumed pairs: the first (action, reward) of every batch.
  std::vector<std::size_t> tape_actions;
  std::vector<double> tape_rewards;
  for (std::size_t j = 0; j < grid.batches; ++j) {
    tape_actions.push_back(traj.actions[j * 8]);
    tape_rewards.push_back(traj.rewards[j * 8]);
  }

  // Drive a fresh policy through an online pass over the tape using the same
  // policy stream; it must pick the same actions and land in the same state.
  ThompsonSampling mirror(2);
  RunStreams streams = make_run_streams(seed);
  for (std::size_t k = 0; k < grid.batches; ++k) {
    const DecisionRule rule = mirror.decide(streams.policy);
    const std::size_t action = sample_action(rule, streams.policy);
    CHECK(action == tape_actions[k]);
    mirror.update(action, tape_rewards[k]);
  }
  for (std::size_t a = 0; a < 2; ++a) {
    CHECK(mirror.alpha(a) == policy.alpha(a));
    CHECK(mirror.beta(a) == policy.beta(a));
    CHECK(mirror.pull_counts()[a] == policy.pull_counts()[a]);
  }
}

TEST_CASE("trajectory invariants hold across modes and grids") {
  Rng meta(55);
  const Environment env = preset("env6");
  const auto& gaps = env.gaps();
  const Mode modes[] = {Mode::kOnline, Mode::kBatched, Mode::kShort};
  for (int i = 0; i < 20; ++i) {
    const std::size_t b = 1 + meta.uniform_index(16);
    const std::size_t n_req = b + meta.uniform_index(200);
    const BatchGrid grid = make_grid(n_req, b);
    const Mode mode = modes[meta.uniform_index(3)];
    auto policy = make_policy(spec_of("ts"), env.arms());
    const Trajectory traj = run_mode(*policy, env, grid, mode, meta.next_u64());

    CHECK(traj.actions.size() == grid.horizon);
    CHECK(traj.rewards.size() == grid.horizon);
    CHECK(traj.rules.size() == grid.horizon);
    CHECK(traj.pseudo_regret.size() == grid.horizon);
    CHECK(std::isfinite(traj.total_reward));

    double prev = 0.0;
    for (std::size_t t = 0; t < grid.horizon; ++t) {
      CHECK(is_valid_rule(traj.rules[t]));
      const double inc = traj.pseudo_regret[t] - prev;
      prev = traj.pseudo_regret[t];
      CHECK(inc >= 0.0);
      // Each increment is one of the environment's gaps (up to the rounding
      // of the running sum).
      const bool is_gap = std::any_of(gaps.begin(), gaps.end(),
                                      [&](double g) { return std::abs(inc - g) <= 1e-9; });
      CHECK(is_gap);
    }
  }
}

TEST_CASE("runs are pure functions of seed and configuration") {
  const Environment env = preset("env2");
  const BatchGrid grid = make_grid(200, 4);
  auto p1 = make_policy(spec_of("ts"), 2);
  auto p2 = make_policy(spec_of("ts"), 2);
  const Trajectory a = run_batched(*p1, env, grid, 91);
  const Trajectory b = run_batched(*p2, env, grid, 91);
  CHECK(same_realization(a, b));
  CHECK(a.seed == b.seed);
}

TEST_CASE("the boundary observer sees the flushed policy state") {
  const Environment env = preset("env1");
  const BatchGrid grid = make_grid(40, 8);

  for (Mode mode : {Mode::kOnline, Mode::kBatched, Mode::kShort}) {
    std::vector<std::size_t> seen;
    std::vector<std::size_t> consumed;
    RunOptions options;
    options.observer = [&](std::size_t completed, const Policy& state) {
      seen.push_back(completed);
      consumed.push_back(state.rewards_consumed());
    };
    auto policy = make_policy(spec_of("ts"), 2);
    (void)run_mode(*policy, env, grid, mode, 13, options);

    CHECK(seen == std::vector<std::size_t>{1, 2, 3, 4, 5});
    for (std::size_t j = 0; j < seen.size(); ++j) {
      const std::size_t expected = mode == Mode::kShort ? seen[j] : seen[j] * 8;
      CHECK(consumed[j] == expected);
    }
  }
}

TEST_CASE("runner rejects invalid combinations") {
  const Environment linear = preset("linear_demo");
  auto policy = make_policy(spec_of("ts"), 3);
  CHECK_THROWS_AS(run_online(*policy, linear, 10, 1), std::invalid_argument);

  const Environment env = preset("env1");
  auto wrong_arms = make_policy(spec_of("ts"), 4);
  CHECK_THROWS_AS(run_online(*wrong_arms, env, 10, 1), std::invalid_argument);
}
