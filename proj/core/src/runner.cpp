#include "batchbandit/runner.hpp"

#include <stdexcept>

#include "batchbandit/history.hpp"

namespace batchbandit {

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::kOnline: return "online";
    case Mode::kBatched: return "batched";
    case Mode::kShort: return "short";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  if (name == "online") return Mode::kOnline;
  if (name == "batched") return Mode::kBatched;
  if (name == "short") return Mode::kShort;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

std::uint64_t mode_code(Mode mode) {
  switch (mode) {
    case Mode::kOnline: return 0;
    case Mode::kBatched: return 1;
    case Mode::kShort: return 2;
  }
  return ~0ULL;
}

Trajectory run_mode(Policy& policy, const Environment& env, const BatchGrid& grid, Mode mode,
                    std::uint64_t seed, const RunOptions& options) {
  if (env.family() == RewardFamily::kLinear) {
    throw std::invalid_argument("run_mode: simulation runners take stochastic environments");
  }
  if (policy.arms() != env.arms()) {
    throw std::invalid_argument("run_mode: policy/environment arm count mismatch");
  }
  if (grid.horizon == 0) {
    throw std::invalid_argument("run_mode: empty grid");
  }

  RunStreams streams = make_run_streams(seed);
  const std::vector<double>& gaps = env.gaps();

  Trajectory traj;
  traj.grid = grid;
  traj.mode = mode;
  traj.seed = seed;
  traj.actions.reserve(grid.horizon);
  traj.rewards.reserve(grid.horizon);
  traj.pseudo_regret.reserve(grid.horizon);
  if (options.record_rules) {
    traj.rules.reserve(grid.horizon);
  }

  History history;
  double regret = 0.0;

  for (std::size_t j = 0; j < grid.batches; ++j) {
    const std::size_t start = grid.boundaries[j];

    DecisionRule frozen;
    std::size_t repeated_action = 0;
    if (mode == Mode::kShort) {
      frozen = policy.decide(streams.policy);
      repeated_action = sample_action(frozen, streams.policy);
    }

    for (std::size_t s = 0; s < grid.batch_size; ++s) {
      DecisionRule used;
      std::size_t action;
      if (mode == Mode::kShort) {
        action = repeated_action;
        used = (s == 0) ? std::move(frozen) : DecisionRule::point_mass(env.arms(), repeated_action);
      } else {
        used = policy.decide(streams.policy);
        action = sample_action(used, streams.policy);
      }

      const double reward = env.sample(action, streams.env);
      history.append(action, reward);
      if (mode == Mode::kOnline) {
        history.release(1);
        policy.update(action, reward);
      }

      traj.actions.push_back(action);
      traj.rewards.push_back(reward);
      traj.total_reward += reward;
      regret += gaps[action];
      traj.pseudo_regret.push_back(regret);
      if (options.record_rules) {
        traj.rules.push_back(std::move(used));
      }
    }

    if (mode != Mode::kOnline) {
      history.release(grid.batch_size);
      const auto released = history.entries().subspan(start, grid.batch_size);
      if (mode == Mode::kBatched) {
        for (const HistoryEntry& e : released) {
          policy.update(e.action, e.reward);
        }
      } else {
        policy.update(released.front().action, released.front().reward);
      }
    }

    if (options.observer) {
      options.observer(j + 1, policy);
    }
  }

  return traj;
}

Trajectory run_online(Policy& policy, const Environment& env, std::size_t horizon,
                      std::uint64_t seed, const RunOptions& options) {
  return run_mode(policy, env, make_grid(horizon, 1), Mode::kOnline, seed, options);
}

Trajectory run_batched(Policy& policy, const Environment& env, const BatchGrid& grid,
                       std::uint64_t seed, const RunOptions& options) {
  return run_mode(policy, env, grid, Mode::kBatched, seed, options);
}

Trajectory run_short(Policy& policy, const Environment& env, const BatchGrid& grid,
                     std::uint64_t seed, const RunOptions& options) {
  return run_mode(policy, env, grid, Mode::kShort, seed, options);
}

bool same_realization(const Trajectory& lhs, const Trajectory& rhs) {
  return lhs.grid == rhs.grid && lhs.actions == rhs.actions && lhs.rewards == rhs.rewards &&
         lhs.rules == rhs.rules && lhs.pseudo_regret == rhs.pseudo_regret &&
         lhs.total_reward == rhs.total_reward;
}

}  // namespace batchbandit
