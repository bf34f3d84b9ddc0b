#include "batchbandit/environment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace batchbandit {

namespace {

bool all_finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

std::string synthesize_name(const EnvSpec& spec) {
  std::ostringstream out;
  out << family_name(spec.family) << "(";
  if (spec.family == RewardFamily::kLinear) {
    out << "K=" << spec.thetas.size() << ",d=" << (spec.thetas.empty() ? 0 : spec.thetas.front().size());
  } else {
    for (std::size_t a = 0; a < spec.means.size(); ++a) {
      if (a > 0) out << ",";
      out << spec.means[a];
    }
  }
  out << ")";
  return out.str();
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

std::string_view family_name(RewardFamily family) {
  switch (family) {
    case RewardFamily::kBernoulli: return "bernoulli";
    case RewardFamily::kGaussian: return "gaussian";
    case RewardFamily::kLinear: return "linear";
  }
  return "unknown";
}

double Environment::mean(std::size_t arm) const {
  if (arm >= means_.size()) {
    throw std::out_of_range("Environment::mean: arm out of range");
  }
  return means_[arm];
}

double Environment::sample(std::size_t arm, Rng& rng) const {
  if (arm >= arms()) {
    throw std::out_of_range("Environment::sample: arm out of range");
  }
  switch (family_) {
    case RewardFamily::kBernoulli:
      return rng.bernoulli(means_[arm]);
    case RewardFamily::kGaussian:
      return means_[arm] + stddevs_[arm] * rng.normal();
    case RewardFamily::kLinear:
      throw std::invalid_argument("Environment::sample: linear environments need a context");
  }
  throw std::logic_error("Environment::sample: unreachable");
}

std::vector<double> Environment::sample_context(Rng& rng) const {
  if (family_ != RewardFamily::kLinear) {
    throw std::invalid_argument("Environment::sample_context: not a linear environment");
  }
  std::vector<double> ctx(dim_);
  for (double& x : ctx) {
    x = rng.normal();
  }
  return ctx;
}

double Environment::sample_reward_in_context(std::size_t arm, std::span<const double> context,
                                             Rng& rng) const {
  if (family_ != RewardFamily::kLinear) {
    throw std::invalid_argument("Environment::sample_reward_in_context: not a linear environment");
  }
  if (arm >= arms()) {
    throw std::out_of_range("Environment::sample_reward_in_context: arm out of range");
  }
  if (context.size() != dim_) {
    throw std::invalid_argument("Environment::sample_reward_in_context: context dimension mismatch");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    dot += thetas_[arm][i] * context[i];
  }
  return rng.bernoulli(sigmoid(dot));
}

Environment make_environment(const EnvSpec& spec) {
  Environment env;
  env.family_ = spec.family;

  switch (spec.family) {
    case RewardFamily::kBernoulli: {
      if (spec.means.size() < 2) {
        throw std::invalid_argument("make_environment: need at least two arms");
      }
      if (!all_finite(spec.means)) {
        throw std::invalid_argument("make_environment: non-finite mean");
      }
      for (double m : spec.means) {
        if (m < 0.0 || m > 1.0) {
          throw std::invalid_argument("make_environment: bernoulli mean outside [0, 1]");
        }
      }
      env.means_ = spec.means;
      break;
    }
    case RewardFamily::kGaussian: {
      if (spec.means.size() < 2) {
        throw std::invalid_argument("make_environment: need at least two arms");
      }
      if (!all_finite(spec.means)) {
        throw std::invalid_argument("make_environment: non-finite mean");
      }
      env.means_ = spec.means;
      env.stddevs_ = spec.stddevs.empty() ? std::vector<double>(spec.means.size(), 1.0)
                                          : spec.stddevs;
      if (env.stddevs_.size() != env.means_.size()) {
        throw std::invalid_argument("make_environment: stddevs length must match means");
      }
      for (double s : env.stddevs_) {
        if (!(std::isfinite(s) && s > 0.0)) {
          throw std::invalid_argument("make_environment: stddev must be positive and finite");
        }
      }
      break;
    }
    case RewardFamily::kLinear: {
      if (spec.thetas.size() < 2) {
        throw std::invalid_argument("make_environment: need at least two arms");
      }
      const std::size_t dim = spec.thetas.front().size();
      if (dim == 0) {
        throw std::invalid_argument("make_environment: context dimension must be positive");
      }
      for (const auto& theta : spec.thetas) {
        if (theta.size() != dim) {
          throw std::invalid_argument("make_environment: inconsistent weight dimensions");
        }
        if (!all_finite(theta)) {
          throw std::invalid_argument("make_environment: non-finite weight");
        }
      }
      env.thetas_ = spec.thetas;
      env.dim_ = dim;
      // Marginal mean reward is exactly 0.5 per arm (symmetric contexts).
      env.means_.assign(spec.thetas.size(), 0.5);
      break;
    }
  }

  env.name_ = spec.name.empty() ? synthesize_name(spec) : spec.name;
  env.optimal_mean_ = *std::max_element(env.means_.begin(), env.means_.end());
  env.gaps_.resize(env.means_.size());
  for (std::size_t a = 0; a < env.means_.size(); ++a) {
    env.gaps_[a] = env.optimal_mean_ - env.means_[a];
    if (env.gaps_[a] == 0.0) {
      env.best_arms_.push_back(a);
    }
  }
  env.best_arm_ = env.best_arms_.front();
  return env;
}

}  // namespace batchbandit
