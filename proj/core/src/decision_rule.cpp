#include "batchbandit/decision_rule.hpp"

#include <cmath>
#include <stdexcept>

namespace batchbandit {

DecisionRule DecisionRule::point_mass(std::size_t arms, std::size_t arm) {
  if (arm >= arms) {
    throw std::out_of_range("DecisionRule::point_mass: arm out of range");
  }
  DecisionRule rule;
  rule.probs.assign(arms, 0.0);
  rule.probs[arm] = 1.0;
  return rule;
}

DecisionRule DecisionRule::uniform(std::size_t arms) {
  if (arms == 0) {
    throw std::invalid_argument("DecisionRule::uniform: need at least one arm");
  }
  DecisionRule rule;
  rule.probs.assign(arms, 1.0 / static_cast<double>(arms));
  return rule;
}

bool DecisionRule::is_point_mass(std::size_t* arm) const {
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (probs[a] == 1.0) {
      if (arm != nullptr) {
        *arm = a;
      }
      return true;
    }
  }
  return false;
}

bool is_valid_rule(const DecisionRule& rule, double tol) {
  if (rule.probs.empty()) {
    return false;
  }
  double sum = 0.0;
  for (double p : rule.probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      return false;
    }
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

double expected_reward(const DecisionRule& rule, const Environment& env) {
  if (rule.arms() != env.arms()) {
    throw std::invalid_argument("expected_reward: rule/environment arm count mismatch");
  }
  double value = 0.0;
  for (std::size_t a = 0; a < rule.arms(); ++a) {
    value += env.mean(a) * rule.probs[a];
  }
  return value;
}

RuleOrdering compare_rules(const DecisionRule& lhs, const DecisionRule& rhs, const Environment& env) {
  const double vl = expected_reward(lhs, env);
  const double vr = expected_reward(rhs, env);
  if (std::abs(vl - vr) <= kSimplexTol) {
    return RuleOrdering::kEqual;
  }
  return vl > vr ? RuleOrdering::kBetter : RuleOrdering::kWorse;
}

std::size_t sample_action(const DecisionRule& rule, Rng& rng) {
  std::size_t arm = 0;
  if (rule.is_point_mass(&arm)) {
    return arm;
  }
  const double u = rng.uniform01();
  double cum = 0.0;
  for (std::size_t a = 0; a < rule.arms(); ++a) {
    cum += rule.probs[a];
    if (u < cum) {
      return a;
    }
  }
  return rule.arms() - 1;
}

}  // namespace batchbandit
