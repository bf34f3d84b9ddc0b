#include "batchbandit/policy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "batchbandit/policies.hpp"

namespace batchbandit {

std::string PolicySpec::label() const {
  if (params.empty()) {
    return kind;
  }
  std::ostringstream out;
  out << kind << "(";
  bool first = true;
  for (const auto& [key, value] : params) {
    if (!first) out << ",";
    out << key << "=" << value;
    first = false;
  }
  out << ")";
  return out.str();
}

Policy::Policy(std::size_t arms)
    : pulls_(arms, 0), reward_sums_(arms, 0.0), reward_sqsums_(arms, 0.0) {
  if (arms == 0) {
    throw std::invalid_argument("Policy: need at least one arm");
  }
}

void Policy::update(std::size_t arm, double reward, std::span<const double> /*context*/) {
  record_reward(arm, reward);
}

void Policy::record_reward(std::size_t arm, double reward) {
  if (arm >= arms()) {
    throw std::out_of_range("Policy::update: arm out of range");
  }
  if (!std::isfinite(reward)) {
    throw std::invalid_argument("Policy::update: non-finite reward");
  }
  pulls_[arm] += 1;
  reward_sums_[arm] += reward;
  reward_sqsums_[arm] += reward * reward;
  updates_ += 1;
}

double Policy::mean_estimate(std::size_t arm) const {
  return pulls_[arm] == 0 ? 0.0 : reward_sums_[arm] / static_cast<double>(pulls_[arm]);
}

double Policy::sample_variance(std::size_t arm) const {
  if (pulls_[arm] == 0) {
    return 0.0;
  }
  const double n = static_cast<double>(pulls_[arm]);
  const double mean = reward_sums_[arm] / n;
  const double var = reward_sqsums_[arm] / n - mean * mean;
  return var > 0.0 ? var : 0.0;
}

VarianceVector Policy::posterior_variance() const {
  VarianceVector out(arms());
  for (std::size_t a = 0; a < arms(); ++a) {
    if (pulls_[a] == 0) {
      out[a] = kUnpulledVarianceSentinel;
    } else {
      out[a] = (sample_variance(a) + kVarianceFloor) / static_cast<double>(pulls_[a]);
    }
  }
  return out;
}

namespace {

class ParamReader {
 public:
  explicit ParamReader(const PolicySpec& spec) : spec_(spec) {}

  double take(const std::string& name, double fallback) {
    consumed_.push_back(name);
    auto it = spec_.params.find(name);
    return it == spec_.params.end() ? fallback : it->second;
  }

  double require(const std::string& name) {
    consumed_.push_back(name);
    auto it = spec_.params.find(name);
    if (it == spec_.params.end()) {
      throw std::invalid_argument("policy '" + spec_.kind + "': missing parameter '" + name + "'");
    }
    return it->second;
  }

  void finish() const {
    for (const auto& [key, value] : spec_.params) {
      (void)value;
      bool known = false;
      for (const auto& name : consumed_) {
        if (name == key) {
          known = true;
          break;
        }
      }
      if (!known) {
        throw std::invalid_argument("policy '" + spec_.kind + "': unknown parameter '" + key + "'");
      }
    }
  }

 private:
  const PolicySpec& spec_;
  std::vector<std::string> consumed_;
};

std::size_t require_context_dim(const PolicySpec& spec, std::size_t context_dim) {
  if (context_dim == 0) {
    throw std::invalid_argument("policy '" + spec.kind + "': contextual policy needs context_dim > 0");
  }
  return context_dim;
}

}  // namespace

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::size_t arms,
                                    std::size_t context_dim) {
  ParamReader reader(spec);
  std::unique_ptr<Policy> policy;

  if (spec.kind == "ts") {
    policy = std::make_unique<ThompsonSampling>(arms);
  } else if (spec.kind == "ucb1") {
    policy = std::make_unique<Ucb1>(arms);
  } else if (spec.kind == "egreedy") {
    const double epsilon = reader.take("epsilon", 0.1);
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw std::invalid_argument("policy 'egreedy': epsilon must lie in [0, 1]");
    }
    policy = std::make_unique<EpsilonGreedy>(arms, epsilon);
  } else if (spec.kind == "uniform") {
    policy = std::make_unique<UniformRandom>(arms);
  } else if (spec.kind == "fixed") {
    const double arm = reader.require("arm");
    if (!(arm >= 0.0) || arm != std::floor(arm) || static_cast<std::size_t>(arm) >= arms) {
      throw std::invalid_argument("policy 'fixed': arm must be an index below the arm count");
    }
    policy = std::make_unique<FixedArm>(arms, static_cast<std::size_t>(arm));
  } else if (spec.kind == "linucb") {
    const double lambda = reader.take("lambda", 1.0);
    const double alpha = reader.take("alpha", 1.0);
    if (!(lambda > 0.0)) {
      throw std::invalid_argument("policy 'linucb': lambda must be positive");
    }
    if (!(alpha >= 0.0)) {
      throw std::invalid_argument("policy 'linucb': alpha must be nonnegative");
    }
    policy = std::make_unique<LinUcb>(arms, require_context_dim(spec, context_dim), lambda, alpha);
  } else if (spec.kind == "lints") {
    const double lambda = reader.take("lambda", 1.0);
    const double scale = reader.take("scale", 1.0);
    if (!(lambda > 0.0)) {
      throw std::invalid_argument("policy 'lints': lambda must be positive");
    }
    if (!(scale > 0.0)) {
      throw std::invalid_argument("policy 'lints': scale must be positive");
    }
    policy = std::make_unique<LinTs>(arms, require_context_dim(spec, context_dim), lambda, scale);
  } else {
    throw std::invalid_argument("unknown policy kind '" + spec.kind + "'");
  }

  reader.finish();
  return policy;
}

}  // namespace batchbandit
