#include "batchbandit/policies.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace batchbandit {

namespace {

std::size_t argmax_lowest(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;
    }
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Thompson sampling

ThompsonSampling::ThompsonSampling(std::size_t arms)
    : Policy(arms), alpha_(arms, 1.0), beta_(arms, 1.0) {}

DecisionRule ThompsonSampling::decide(Rng& rng, std::span<const double> /*context*/) const {
  std::vector<double> draws(arms());
  for (std::size_t a = 0; a < arms(); ++a) {
    draws[a] = rng.beta(alpha_[a], beta_[a]);
  }
  return DecisionRule::point_mass(arms(), argmax_lowest(draws));
}

void ThompsonSampling::update(std::size_t arm, double reward, std::span<const double> /*context*/) {
  if (reward != 0.0 && reward != 1.0) {
    throw std::invalid_argument("ThompsonSampling::update: reward must be 0 or 1");
  }
  record_reward(arm, reward);
  alpha_[arm] += reward;
  beta_[arm] += 1.0 - reward;
}

VarianceVector ThompsonSampling::posterior_variance() const {
  VarianceVector out(arms());
  for (std::size_t a = 0; a < arms(); ++a) {
    const double s = alpha_[a] + beta_[a];
    out[a] = alpha_[a] * beta_[a] / (s * s * (s + 1.0));
  }
  return out;
}

std::unique_ptr<Policy> ThompsonSampling::clone() const {
  return std::make_unique<ThompsonSampling>(*this);
}

// ---------------------------------------------------------------------------
// UCB1

Ucb1::Ucb1(std::size_t arms) : Policy(arms) {}

DecisionRule Ucb1::decide(Rng& /*rng*/, std::span<const double> /*context*/) const {
  const auto counts = pull_counts();
  std::vector<double> index(arms());
  const double t = static_cast<double>(rewards_consumed()) + 1.0;
  for (std::size_t a = 0; a < arms(); ++a) {
    if (counts[a] == 0) {
      // Unpulled arms are chosen first; argmax_lowest keeps the lowest index.
      index[a] = std::numeric_limits<double>::infinity();
    } else {
      index[a] = mean_estimate(a) + std::sqrt(2.0 * std::log(t) / static_cast<double>(counts[a]));
    }
  }
  return DecisionRule::point_mass(arms(), argmax_lowest(index));
}

std::unique_ptr<Policy> Ucb1::clone() const { return std::make_unique<Ucb1>(*this); }

// ---------------------------------------------------------------------------
// Epsilon-greedy

EpsilonGreedy::EpsilonGreedy(std::size_t arms, double epsilon) : Policy(arms), epsilon_(epsilon) {}

DecisionRule EpsilonGreedy::decide(Rng& /*rng*/, std::span<const double> /*context*/) const {
  const auto counts = pull_counts();
  std::size_t target = arms();
  for (std::size_t a = 0; a < arms(); ++a) {
    if (counts[a] == 0) {
      target = a;
      break;
    }
  }
  if (target == arms()) {
    std::vector<double> means(arms());
    for (std::size_t a = 0; a < arms(); ++a) {
      means[a] = mean_estimate(a);
    }
    target = argmax_lowest(means);
  }
  if (epsilon_ == 0.0) {
    return DecisionRule::point_mass(arms(), target);
  }
  DecisionRule rule;
  rule.probs.assign(arms(), epsilon_ / static_cast<double>(arms()));
  rule.probs[target] += 1.0 - epsilon_;
  return rule;
}

std::unique_ptr<Policy> EpsilonGreedy::clone() const {
  return std::make_unique<EpsilonGreedy>(*this);
}

// ---------------------------------------------------------------------------
// Uniform / fixed

UniformRandom::UniformRandom(std::size_t arms) : Policy(arms) {}

DecisionRule UniformRandom::decide(Rng& /*rng*/, std::span<const double> /*context*/) const {
  return DecisionRule::uniform(arms());
}

std::unique_ptr<Policy> UniformRandom::clone() const {
  return std::make_unique<UniformRandom>(*this);
}

FixedArm::FixedArm(std::size_t arms, std::size_t arm) : Policy(arms), arm_(arm) {
  if (arm >= arms) {
    throw std::invalid_argument("FixedArm: arm out of range");
  }
}

DecisionRule FixedArm::decide(Rng& /*rng*/, std::span<const double> /*context*/) const {
  return DecisionRule::point_mass(arms(), arm_);
}

std::unique_ptr<Policy> FixedArm::clone() const { return std::make_unique<FixedArm>(*this); }

// ---------------------------------------------------------------------------
// Linear policies

namespace {

using MatrixMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using VectorMap = Eigen::Map<const Eigen::VectorXd>;

}  // namespace

LinearPolicyBase::LinearPolicyBase(std::size_t arms, std::size_t dim, double lambda)
    : Policy(arms), dim_(dim), lambda_(lambda) {
  if (dim == 0) {
    throw std::invalid_argument("LinearPolicyBase: context dimension must be positive");
  }
  gram_.assign(arms, std::vector<double>(dim * dim, 0.0));
  response_.assign(arms, std::vector<double>(dim, 0.0));
  for (auto& g : gram_) {
    for (std::size_t i = 0; i < dim; ++i) {
      g[i * dim + i] = lambda;
    }
  }
}

void LinearPolicyBase::check_context(std::span<const double> context) const {
  if (context.size() != dim_) {
    throw std::invalid_argument(context.empty()
                                    ? "linear policy: called without a context"
                                    : "linear policy: context dimension mismatch");
  }
}

void LinearPolicyBase::update(std::size_t arm, double reward, std::span<const double> context) {
  check_context(context);
  record_reward(arm, reward);
  auto& g = gram_[arm];
  auto& r = response_[arm];
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      g[i * dim_ + j] += context[i] * context[j];
    }
    r[i] += reward * context[i];
  }
}

std::vector<double> LinearPolicyBase::theta(std::size_t arm) const {
  MatrixMap a(gram_[arm].data(), static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  VectorMap b(response_[arm].data(), static_cast<Eigen::Index>(dim_));
  Eigen::VectorXd sol = a.llt().solve(b);
  return std::vector<double>(sol.data(), sol.data() + dim_);
}

VarianceVector LinearPolicyBase::posterior_variance() const {
  // Mean eigen-variance of the ridge posterior: trace(A^{-1}) / d.
  VarianceVector out(arms());
  Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim_),
                                                       static_cast<Eigen::Index>(dim_));
  for (std::size_t a = 0; a < arms(); ++a) {
    MatrixMap g(gram_[a].data(), static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    out[a] = g.llt().solve(identity).trace() / static_cast<double>(dim_);
  }
  return out;
}

LinUcb::LinUcb(std::size_t arms, std::size_t dim, double lambda, double alpha)
    : LinearPolicyBase(arms, dim, lambda), alpha_(alpha) {}

DecisionRule LinUcb::decide(Rng& /*rng*/, std::span<const double> context) const {
  check_context(context);
  VectorMap x(context.data(), static_cast<Eigen::Index>(dim_));
  std::vector<double> score(arms());
  for (std::size_t a = 0; a < arms(); ++a) {
    MatrixMap g(gram_[a].data(), static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    VectorMap b(response_[a].data(), static_cast<Eigen::Index>(dim_));
    auto llt = g.llt();
    const Eigen::VectorXd est = llt.solve(b);
    const Eigen::VectorXd ax = llt.solve(x);
    score[a] = est.dot(x) + alpha_ * std::sqrt(std::max(0.0, x.dot(ax)));
  }
  return DecisionRule::point_mass(arms(), argmax_lowest(score));
}

std::unique_ptr<Policy> LinUcb::clone() const { return std::make_unique<LinUcb>(*this); }

LinTs::LinTs(std::size_t arms, std::size_t dim, double lambda, double scale)
    : LinearPolicyBase(arms, dim, lambda), scale_(scale) {}

DecisionRule LinTs::decide(Rng& rng, std::span<const double> context) const {
  check_context(context);
  VectorMap x(context.data(), static_cast<Eigen::Index>(dim_));
  std::vector<double> score(arms());
  Eigen::VectorXd z(static_cast<Eigen::Index>(dim_));
  for (std::size_t a = 0; a < arms(); ++a) {
    MatrixMap g(gram_[a].data(), static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    VectorMap b(response_[a].data(), static_cast<Eigen::Index>(dim_));
    auto llt = g.llt();
    const Eigen::VectorXd est = llt.solve(b);
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      z(i) = rng.normal();
    }
    // Covariance A^{-1} = L^{-T} L^{-1}, so theta = est + scale * L^{-T} z.
    const Eigen::VectorXd perturbed =
        est + scale_ * llt.matrixL().transpose().solve(z);
    score[a] = perturbed.dot(x);
  }
  return DecisionRule::point_mass(arms(), argmax_lowest(score));
}

std::unique_ptr<Policy> LinTs::clone() const { return std::make_unique<LinTs>(*this); }

}  // namespace batchbandit
