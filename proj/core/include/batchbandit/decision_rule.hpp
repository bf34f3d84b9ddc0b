#pragma once

#include <cstddef>
#include <vector>

#include "batchbandit/environment.hpp"
#include "batchbandit/rng.hpp"

namespace batchbandit {

/// Tolerance on the simplex constraints (probabilities sum to one).
inline constexpr double kSimplexTol = 1e-12;

/// Probability vector over the arms; the image of a policy map for one
/// history. Deterministic choices are point masses.
struct DecisionRule {
  std::vector<double> probs;

  std::size_t arms() const { return probs.size(); }

  static DecisionRule point_mass(std::size_t arms, std::size_t arm);
  static DecisionRule uniform(std::size_t arms);

  /// True when exactly one entry is 1.0; the arm index goes to *arm if given.
  bool is_point_mass(std::size_t* arm = nullptr) const;

  bool operator==(const DecisionRule&) const = default;
};

/// Nonnegative entries summing to one within tol.
bool is_valid_rule(const DecisionRule& rule, double tol = kSimplexTol);

/// Sum over arms of mean(a) * rule(a).
double expected_reward(const DecisionRule& rule, const Environment& env);

/// Preorder on decision rules induced by expected reward under env.
/// kEqual means the expected rewards agree within kSimplexTol, in which case
/// each rule is "not worse" than the other.
enum class RuleOrdering { kWorse, kEqual, kBetter };

RuleOrdering compare_rules(const DecisionRule& lhs, const DecisionRule& rhs, const Environment& env);

inline bool not_worse(RuleOrdering o) { return o != RuleOrdering::kWorse; }

/// Realizes an action from the rule. Point masses are returned directly
/// without consuming randomness; mixtures consume one uniform draw.
std::size_t sample_action(const DecisionRule& rule, Rng& rng);

}  // namespace batchbandit
