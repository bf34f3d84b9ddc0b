#pragma once

// Shared test helpers: random rule generators, constructed improving rule
// sequences, and a quadrature oracle for probability-matching masses.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "batchbandit/decision_rule.hpp"
#include "batchbandit/environment.hpp"
#include "batchbandit/rng.hpp"

namespace testsupport {

/// Random point on the probability simplex (normalized gamma draws).
inline batchbandit::DecisionRule random_rule(std::size_t arms, batchbandit::Rng& rng) {
  batchbandit::DecisionRule rule;
  rule.probs.resize(arms);
  double sum = 0.0;
  for (double& p : rule.probs) {
    p = rng.gamma(1.0);
    sum += p;
  }
  for (double& p : rule.probs) {
    p /= sum;
  }
  return rule;
}

/// Rule sequence whose per-step expected reward strictly increases: a mix of
/// the uniform rule and the point mass on the best arm with a strictly
/// increasing weight. Requires an environment whose best mean exceeds the
/// average mean.
inline std::vector<batchbandit::DecisionRule> improving_sequence(
    const batchbandit::Environment& env, std::size_t length) {
  std::vector<batchbandit::DecisionRule> rules;
  rules.reserve(length);
  const std::size_t arms = env.arms();
  const std::size_t best = env.best_arm();
  for (std::size_t t = 0; t < length; ++t) {
    const double w = static_cast<double>(t + 1) / static_cast<double>(length + 2);
    batchbandit::DecisionRule rule;
    rule.probs.assign(arms, (1.0 - w) / static_cast<double>(arms));
    rule.probs[best] += w;
    rules.push_back(std::move(rule));
  }
  return rules;
}

/// P(argmax over arms of independent Beta(alpha_a, beta_a) draws == arm), by
/// Gauss-Legendre quadrature of f_arm(x) * prod_{j != arm} F_j(x). Needs
/// boost::math for the regularized incomplete beta; test-only oracle, kept
/// independent of the sampling path it checks.
std::vector<double> beta_argmax_masses(const std::vector<double>& alpha,
                                       const std::vector<double>& beta);

}  // namespace testsupport
