#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "batchbandit/environment.hpp"
#include "batchbandit/policy.hpp"
#include "batchbandit/runner.hpp"
#include "batchbandit/stats.hpp"

namespace batchbandit {

/// Final cumulative pseudo-regret of the trajectory on env; validates that
/// the trajectory's own curve is consistent with the action list.
double pseudo_regret(const Trajectory& traj, const Environment& env);

/// Elementwise mean of the rules; stays on the probability simplex exactly
/// (up to the usual 1e-12 tolerance).
DecisionRule average_decision_rule(std::span<const DecisionRule> rules);

/// Per-timestep mean and standard error of the cumulative pseudo-regret over
/// a set of replicate trajectories with matching grids.
struct RegretTrace {
  std::vector<double> mean;
  std::vector<double> se;
  std::size_t replicates = 0;
  Mode mode = Mode::kOnline;
  std::size_t batch_size = 0;
};

RegretTrace mean_regret_trace(std::span<const Trajectory> trajectories, const Environment& env);

/// Exact ordering checks on a rule sequence whose per-step expected reward
/// strictly increases: the running averages must strictly improve between
/// any two horizons, and each step's rule must beat the running average at
/// that step (checked from the second step; at the first the two coincide).
struct OrderingCheck {
  std::size_t average_pairs = 0;
  std::size_t average_violations = 0;
  std::size_t step_points = 0;
  std::size_t step_violations = 0;

  bool clean() const { return average_violations == 0 && step_violations == 0; }
};

OrderingCheck check_average_rule_orderings(std::span<const DecisionRule> rules,
                                           const Environment& env);

/// Pairwise status of the per-step regret rate between two horizons.
enum class PairStatus { kConforming, kInconclusive, kViolated };

struct RatePair {
  std::size_t t1 = 0;
  std::size_t t2 = 0;
  double diff = 0.0;  // rate(t1) - rate(t2); positive means improvement
  double se = 0.0;
  PairStatus status = PairStatus::kInconclusive;
};

/// Monte Carlo audit of "improvement over time": estimates regret(t)/t on a
/// checkpoint grid from online runs and classifies every ordered checkpoint
/// pair. A pair conforms when the paired rate decrease exceeds two standard
/// errors, is violated when the rate increases by more than two standard
/// errors, and is inconclusive otherwise. This is a report, not an
/// assertion: policies with flat or zero regret simply fail to conform.
struct ImprovementReport {
  std::vector<std::size_t> checkpoints;
  std::vector<double> rate_mean;
  std::vector<double> rate_se;
  std::vector<RatePair> pairs;
  double conforming_fraction = 0.0;
  std::size_t replicates = 0;
};

/// When replicate_seeds is nonempty it overrides the derived per-replicate
/// seeds (size must equal replicates).
ImprovementReport check_improvement_rate(const PolicySpec& policy, const Environment& env,
                                         std::size_t horizon, std::size_t replicates,
                                         std::uint64_t seed,
                                         std::vector<std::size_t> checkpoints = {},
                                         unsigned threads = 0,
                                         std::span<const std::uint64_t> replicate_seeds = {});

/// Replicate-matched runs of the three modes under common random numbers:
/// element r of each vector used the same run seed.
struct MatchedRuns {
  std::vector<Trajectory> online;
  std::vector<Trajectory> batched;
  std::vector<Trajectory> short_run;
};

MatchedRuns run_matched_modes(const PolicySpec& policy, const Environment& env,
                              const BatchGrid& grid, std::size_t replicates, std::uint64_t seed,
                              unsigned threads = 0, bool record_rules = false);

/// Monte Carlo audit of variance contraction at batch boundaries: after
/// every flush the mean-estimate variances of the three policies are
/// snapshotted and the replicate means are compared on the best arms.
/// Two readings are reported, because with tied optimal arms the comparison
/// "over the best arms" is ambiguous: the representative reading uses the
/// lowest-index optimal arm, the set reading requires the ordering
/// elementwise on every optimal arm. For policies without a posterior the
/// compared quantity is the frequentist proxy (see Policy::posterior_variance),
/// which the report flags.
struct VarianceAudit {
  std::size_t batch_size = 0;
  std::size_t batches = 0;
  std::size_t replicates = 0;
  std::vector<std::size_t> boundaries;  // completed batches, 1..M
  std::vector<double> var_online;       // replicate mean on the representative arm
  std::vector<double> var_batched;
  std::vector<double> var_short;
  std::vector<bool> holds;              // online <= batched <= short, representative arm
  std::vector<bool> holds_set;          // same, elementwise over the optimal-arm set
  double fraction_holding = 0.0;
  double fraction_holding_set = 0.0;
  bool bayesian_variance = false;       // false means the frequentist proxy was compared
};

VarianceAudit check_variance_contraction(const PolicySpec& policy, const Environment& env,
                                         const BatchGrid& grid, std::size_t replicates,
                                         std::uint64_t seed, unsigned threads = 0);

/// Cumulative replicate-mean received-reward counts on the best arm per
/// batch, for matched online/batched/short runs. Under the short mode only
/// the first step of each batch yields a consumed reward. The ordering
/// checked per prefix is mean(online) > mean(batched) >= mean(short).
struct PullCountAudit {
  std::size_t batch_size = 0;
  std::size_t batches = 0;
  std::size_t replicates = 0;
  std::size_t best_arm = 0;
  std::vector<double> cum_online;
  std::vector<double> cum_batched;
  std::vector<double> cum_short;
  std::vector<bool> holds;
  double fraction_holding = 0.0;
};

PullCountAudit pull_count_ordering(const MatchedRuns& runs, const Environment& env);

/// Verdict on one inequality of the sandwich bound, from paired replicate
/// differences under common random numbers. A strict inequality holds when
/// the mean difference clears two standard errors; an inequality is violated
/// only when the difference is negative beyond two standard errors;
/// degenerate-equal marks an exactly-zero difference with zero spread.
enum class BoundVerdict { kHolds, kHoldsWithinCi, kViolated, kDegenerateEqual };

std::string_view verdict_name(BoundVerdict verdict);

struct EstimateCi {
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

/// The estimated triple (online regret, batched regret, scaled short regret)
/// with the verdicts for the sandwich ordering
///   R_n(online) < R_n(batched) <= b * R_M(short base policy)
/// plus the outer relation b * R_M > R_n(online) implied by improvement over
/// time. short_scaled measures the repeat-each-decision run over the full
/// horizon; short_independent is the alternative estimator b * mean regret
/// of independent online runs of horizon M.
struct BoundReport {
  std::string env_name;
  std::string policy_label;
  std::size_t horizon = 0;     // n = b * M
  std::size_t batch_size = 0;  // b
  std::size_t batches = 0;     // M
  std::size_t replicates = 0;

  EstimateCi online;
  EstimateCi batched;
  EstimateCi short_scaled;
  EstimateCi short_independent;

  double slack_left = 0.0;   // batched - online
  double se_left = 0.0;
  double slack_right = 0.0;  // short_scaled - batched
  double se_right = 0.0;
  double slack_outer = 0.0;  // short_scaled - online
  double se_outer = 0.0;

  BoundVerdict verdict_left = BoundVerdict::kHoldsWithinCi;
  BoundVerdict verdict_right = BoundVerdict::kHoldsWithinCi;
  BoundVerdict verdict_outer = BoundVerdict::kHoldsWithinCi;

  bool acceptable() const {
    return verdict_left != BoundVerdict::kViolated && verdict_right != BoundVerdict::kViolated;
  }
};

/// Runs the three modes over shared replicate seeds and estimates the
/// sandwich triple. batch_size must be at least 2 (the ordering is trivial
/// otherwise); the horizon is truncated to a multiple of the batch size.
/// When replicate_seeds is nonempty it overrides the derived seeds, which
/// also makes the estimates invariant under permutations of that list.
BoundReport verify_regret_sandwich(const PolicySpec& policy, const Environment& env,
                                   std::size_t horizon, std::size_t batch_size,
                                   std::size_t replicates, std::uint64_t seed,
                                   unsigned threads = 0,
                                   std::span<const std::uint64_t> replicate_seeds = {});

/// Human-readable block for one report.
std::string render_text(const BoundReport& report);

}  // namespace batchbandit
