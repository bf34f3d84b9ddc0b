#include "batchbandit/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace batchbandit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kEnvStreamSalt = 0x656e7669726f6e6dULL;
constexpr std::uint64_t kPolicyStreamSalt = 0x706f6c6963792e2eULL;

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt));
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t out = splitmix64(master);
  for (std::uint64_t p : path) {
    out = mix_seed(out, p);
  }
  return out;
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t k) {
  if (k == 0) {
    throw std::invalid_argument("uniform_index: k must be positive");
  }
  auto idx = static_cast<std::size_t>(uniform01() * static_cast<double>(k));
  return idx < k ? idx : k - 1;
}

double Rng::bernoulli(double p) {
  return uniform01() < p ? 1.0 : 0.0;
}

double Rng::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log1p(-u1));
  return radius * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) {
    throw std::invalid_argument("gamma: shape must be positive");
  }
  if (shape < 1.0) {
    // Boost to shape + 1, then scale back by a uniform power.
    const double u = 1.0 - uniform01();  // (0, 1]
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) {
      continue;
    }
    v = v * v * v;
    const double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) {
      return d * v;
    }
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  const double sum = x + y;
  return sum > 0.0 ? x / sum : 0.5;
}

RunStreams make_run_streams(std::uint64_t run_seed) {
  return RunStreams{Rng(mix_seed(run_seed, kEnvStreamSalt)),
                    Rng(mix_seed(run_seed, kPolicyStreamSalt))};
}

}  // namespace batchbandit
