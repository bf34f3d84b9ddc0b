#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "batchbandit/rng.hpp"

namespace batchbandit {

enum class RewardFamily { kBernoulli, kGaussian, kLinear };

std::string_view family_name(RewardFamily family);

/// Plain description of an environment, as read from a configuration file or
/// a preset table. Validated by make_environment.
struct EnvSpec {
  RewardFamily family = RewardFamily::kBernoulli;
  std::string name;                         // optional; synthesized when empty
  std::vector<double> means;                // bernoulli / gaussian
  std::vector<double> stddevs;              // gaussian only; defaults to 1.0 per arm
  std::vector<std::vector<double>> thetas;  // linear only; K rows of dimension d
};

/// Immutable ground-truth environment: per-arm reward distributions with
/// known means. Safe to share read-only across simulation workers.
class Environment {
 public:
  std::size_t arms() const { return means_.size(); }
  RewardFamily family() const { return family_; }
  const std::string& name() const { return name_; }

  std::span<const double> means() const { return means_; }
  double mean(std::size_t arm) const;

  double optimal_mean() const { return optimal_mean_; }
  /// Lowest-index optimal arm.
  std::size_t best_arm() const { return best_arm_; }
  /// All optimal arms, ascending.
  const std::vector<std::size_t>& best_arm_set() const { return best_arms_; }
  /// Per-arm gaps optimal_mean() - mean(a); at least one entry is zero.
  const std::vector<double>& gaps() const { return gaps_; }

  /// One reward draw from arm's distribution (bernoulli / gaussian families).
  double sample(std::size_t arm, Rng& rng) const;

  /// Context dimension; zero unless the family is linear.
  std::size_t context_dim() const { return dim_; }
  /// Standard normal context vector (linear family).
  std::vector<double> sample_context(Rng& rng) const;
  /// Binary reward with success probability sigmoid(theta_arm . context).
  /// Contexts are symmetric around zero, so each arm's marginal mean reward
  /// is exactly one half; the means() vector records that.
  double sample_reward_in_context(std::size_t arm, std::span<const double> context, Rng& rng) const;

 private:
  friend Environment make_environment(const EnvSpec& spec);
  Environment() = default;

  RewardFamily family_ = RewardFamily::kBernoulli;
  std::string name_;
  std::vector<double> means_;
  std::vector<double> stddevs_;
  std::vector<std::vector<double>> thetas_;
  std::size_t dim_ = 0;
  double optimal_mean_ = 0.0;
  std::size_t best_arm_ = 0;
  std::vector<std::size_t> best_arms_;
  std::vector<double> gaps_;
};

/// Validates the spec and precomputes the derived quantities. Throws
/// std::invalid_argument for out-of-domain parameters (bernoulli mean outside
/// [0, 1], fewer than two arms, non-finite values, ...).
Environment make_environment(const EnvSpec& spec);

}  // namespace batchbandit
