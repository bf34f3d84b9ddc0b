#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "batchbandit/batch_grid.hpp"
#include "batchbandit/decision_rule.hpp"
#include "batchbandit/environment.hpp"
#include "batchbandit/policy.hpp"

namespace batchbandit {

enum class Mode { kOnline, kBatched, kShort };

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view name);
/// Stable numeric code used in seed derivation and CSV output ordering.
std::uint64_t mode_code(Mode mode);

/// Full record of one simulated run.
struct Trajectory {
  BatchGrid grid;
  Mode mode = Mode::kOnline;
  std::uint64_t seed = 0;
  std::vector<std::size_t> actions;
  std::vector<double> rewards;
  std::vector<DecisionRule> rules;  // rule each action was realized from; may be skipped
  std::vector<double> pseudo_regret;  // cumulative sum of gaps of the played arms
  double total_reward = 0.0;

  double final_regret() const { return pseudo_regret.empty() ? 0.0 : pseudo_regret.back(); }
};

/// Called after every batch flush with the number of completed batches
/// (1..grid.batches) and the policy state at that boundary.
using BoundaryObserver = std::function<void(std::size_t completed_batches, const Policy& policy)>;

struct RunOptions {
  bool record_rules = true;
  BoundaryObserver observer;
};

/// One run of `policy` on `env` over `grid` in the given mode.
///
/// Per step the engine asks the policy for a rule, realizes an action,
/// samples a reward, and records everything. The modes differ only in when
/// the policy sees feedback:
///   online  - every reward is applied immediately;
///   batched - the rule is recomputed per step against the frozen state and
///             all b pairs of a batch are applied, in step order, at the
///             batch end;
///   short   - the frozen rule is realized once per batch, that action is
///             repeated for all b steps, and only the batch's first pair is
///             applied at the end (M consumed rewards over the horizon).
///
/// The run seed is split into an environment stream and a policy stream
/// (make_run_streams), so runs of different modes under one seed draw the
/// same rewards step for step when their action sequences agree; at b = 1
/// the three modes produce bitwise identical trajectories.
Trajectory run_mode(Policy& policy, const Environment& env, const BatchGrid& grid, Mode mode,
                    std::uint64_t seed, const RunOptions& options = {});

Trajectory run_online(Policy& policy, const Environment& env, std::size_t horizon,
                      std::uint64_t seed, const RunOptions& options = {});
Trajectory run_batched(Policy& policy, const Environment& env, const BatchGrid& grid,
                       std::uint64_t seed, const RunOptions& options = {});
Trajectory run_short(Policy& policy, const Environment& env, const BatchGrid& grid,
                     std::uint64_t seed, const RunOptions& options = {});

/// True when two trajectories realized the same run: identical grids,
/// actions, rewards, recorded rules, and regret curves. The mode tag and
/// seed are deliberately not compared.
bool same_realization(const Trajectory& lhs, const Trajectory& rhs);

}  // namespace batchbandit
