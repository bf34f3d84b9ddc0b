#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "batchbandit/policy.hpp"

namespace batchbandit {

/// Beta-Bernoulli Thompson sampling with a Beta(1, 1) prior per arm.
/// decide() draws one fresh posterior sample per arm and returns the point
/// mass on the argmax, so repeated calls against a frozen state realize the
/// probability-matching distribution.
class ThompsonSampling final : public Policy {
 public:
  explicit ThompsonSampling(std::size_t arms);
  using Policy::decide;
  using Policy::update;

  DecisionRule decide(Rng& rng, std::span<const double> context) const override;
  void update(std::size_t arm, double reward, std::span<const double> context) override;
  VarianceVector posterior_variance() const override;
  std::unique_ptr<Policy> clone() const override;
  std::string_view kind() const override { return "ts"; }

  double alpha(std::size_t arm) const { return alpha_[arm]; }
  double beta(std::size_t arm) const { return beta_[arm]; }

 private:
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

/// Classic UCB1: empirical mean plus sqrt(2 ln t / N_a), where t counts
/// consumed rewards plus one. Unpulled arms have an infinite index, lowest
/// index first; ties break to the lowest index.
class Ucb1 final : public Policy {
 public:
  explicit Ucb1(std::size_t arms);
  using Policy::decide;
  using Policy::update;

  DecisionRule decide(Rng& rng, std::span<const double> context) const override;
  std::unique_ptr<Policy> clone() const override;
  std::string_view kind() const override { return "ucb1"; }
};

/// epsilon * uniform + (1 - epsilon) * point mass on the greedy arm. Each
/// arm is pulled once before greedy exploitation starts (lowest unpulled
/// index first).
class EpsilonGreedy final : public Policy {
 public:
  EpsilonGreedy(std::size_t arms, double epsilon);
  using Policy::decide;
  using Policy::update;

  DecisionRule decide(Rng& rng, std::span<const double> context) const override;
  std::unique_ptr<Policy> clone() const override;
  std::string_view kind() const override { return "egreedy"; }

  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
};

/// Ignores all feedback and plays uniformly at random.
class UniformRandom final : public Policy {
 public:
  explicit UniformRandom(std::size_t arms);
  using Policy::decide;
  using Policy::update;

  DecisionRule decide(Rng& rng, std::span<const double> context) const override;
  std::unique_ptr<Policy> clone() const override;
  std::string_view kind() const override { return "uniform"; }
};

/// Always plays one arm; the oracle policy when pointed at the best arm.
class FixedArm final : public Policy {
 public:
  FixedArm(std::size_t arms, std::size_t arm);
  using Policy::decide;
  using Policy::update;

  DecisionRule decide(Rng& rng, std::span<const double> context) const override;
  std::unique_ptr<Policy> clone() const override;
  std::string_view kind() const override { return "fixed"; }

  std::size_t arm() const { return arm_; }

 private:
  std::size_t arm_;
};

/// Shared state of the disjoint linear policies: per-arm ridge-regularized
/// gram matrix A_a = lambda I + sum x x^T and response vector b_a = sum r x.
class LinearPolicyBase : public Policy {
 public:
  LinearPolicyBase(std::size_t arms, std::size_t dim, double lambda);
  using Policy::decide;
  using Policy::update;

  void update(std::size_t arm, double reward, std::span<const double> context) override;
  VarianceVector posterior_variance() const override;
  bool contextual() const override { return true; }

  std::size_t dim() const { return dim_; }
  /// Ridge estimate A_a^{-1} b_a.
  std::vector<double> theta(std::size_t arm) const;
  /// Row-major d x d gram matrix of the arm.
  const std::vector<double>& gram(std::size_t arm) const { return gram_[arm]; }

 protected:
  void check_context(std::span<const double> context) const;

  std::size_t dim_;
  double lambda_;
  std::vector<std::vector<double>> gram_;      // per arm, row-major d*d
  std::vector<std::vector<double>> response_;  // per arm, length d
};

/// Disjoint LinUCB: score = theta_a . x + alpha * sqrt(x^T A_a^{-1} x).
class LinUcb final : public LinearPolicyBase {
 public:
  LinUcb(std::size_t arms, std::size_t dim, double lambda, double alpha);
  using Policy::decide;

  DecisionRule decide(Rng& rng, std::span<const double> context) const override;
  std::unique_ptr<Policy> clone() const override;
  std::string_view kind() const override { return "linucb"; }

  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

/// Disjoint linear Thompson sampling: per arm draw theta ~ N(theta_a,
/// scale^2 A_a^{-1}) and play the argmax of theta . x.
class LinTs final : public LinearPolicyBase {
 public:
  LinTs(std::size_t arms, std::size_t dim, double lambda, double scale);
  using Policy::decide;

  DecisionRule decide(Rng& rng, std::span<const double> context) const override;
  std::unique_ptr<Policy> clone() const override;
  std::string_view kind() const override { return "lints"; }

  double scale() const { return scale_; }

 private:
  double scale_;
};

}  // namespace batchbandit
