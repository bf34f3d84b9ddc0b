#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "batchbandit/decision_rule.hpp"
#include "batchbandit/rng.hpp"

namespace batchbandit {

/// Per-arm conditional variance of the mean-reward estimate.
using VarianceVector = std::vector<double>;

/// Variance reported for arms that never received a reward under the
/// frequentist proxy (no posterior to speak of, so "very uncertain").
inline constexpr double kUnpulledVarianceSentinel = 1e6;
/// Added to the empirical variance so the frequentist proxy stays positive
/// when all observed rewards of an arm are identical.
inline constexpr double kVarianceFloor = 1e-9;

/// Policy identifier plus hyperparameters, as read from configuration.
/// Known kinds: ts, ucb1, egreedy (epsilon), uniform, fixed (arm),
/// lints (lambda, scale), linucb (lambda, alpha).
struct PolicySpec {
  std::string kind;
  std::map<std::string, double> params;

  /// kind plus any explicitly set parameters, e.g. "egreedy(epsilon=0.25)".
  std::string label() const;
};

/// A policy owns its sufficient statistics and maps them to decision rules.
/// decide() never mutates the statistics; randomized policies draw from the
/// rng passed in, so a frozen state can be queried repeatedly. States are
/// confined to one worker; clone() is deep and is how matched runs fork a
/// common starting point.
class Policy {
 public:
  explicit Policy(std::size_t arms);
  virtual ~Policy() = default;

  virtual DecisionRule decide(Rng& rng, std::span<const double> context) const = 0;
  DecisionRule decide(Rng& rng) const { return decide(rng, {}); }

  virtual void update(std::size_t arm, double reward, std::span<const double> context);
  void update(std::size_t arm, double reward) { update(arm, reward, {}); }

  /// Per-arm variance of the mean-reward estimate. Bayesian policies report
  /// the exact posterior variance; the default is the frequentist proxy
  /// sample_variance / pulls with kUnpulledVarianceSentinel for unpulled arms.
  virtual VarianceVector posterior_variance() const;

  virtual std::unique_ptr<Policy> clone() const = 0;
  virtual bool contextual() const { return false; }
  virtual std::string_view kind() const = 0;

  std::size_t arms() const { return pulls_.size(); }
  /// Total rewards consumed via update across all arms.
  std::size_t rewards_consumed() const { return updates_; }
  std::span<const std::size_t> pull_counts() const { return pulls_; }
  /// Empirical mean reward of the arm; 0 when unpulled.
  double mean_estimate(std::size_t arm) const;
  /// Biased (1/N) empirical variance of the arm's rewards; 0 when unpulled.
  double sample_variance(std::size_t arm) const;

 protected:
  void record_reward(std::size_t arm, double reward);

 private:
  std::vector<std::size_t> pulls_;
  std::vector<double> reward_sums_;
  std::vector<double> reward_sqsums_;
  std::size_t updates_ = 0;
};

/// Builds a fresh policy state. context_dim must be positive for contextual
/// kinds and is ignored otherwise. Throws std::invalid_argument for unknown
/// kinds, unknown parameter names, and out-of-domain values.
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::size_t arms,
                                    std::size_t context_dim = 0);

}  // namespace batchbandit
