#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace batchbandit {

/// Stateless mix of (seed, salt) into a new seed (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Folds a path of indices into a master seed. Every run of a sweep or an
/// audit derives its seed this way, so any single run can be reproduced in
/// isolation and results do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Random stream with fixed draw semantics: bernoulli consumes one uniform,
/// normal consumes two (Box-Muller, no cached spare), gamma uses
/// Marsaglia-Tsang rejection. Pinning the recipes keeps trajectories
/// bit-reproducible and keeps paired runs with a shared seed aligned on the
/// reward stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw in [0, 1) with 53 random bits.
  double uniform01();

  /// Index uniform over {0, ..., k-1}; k must be positive.
  std::size_t uniform_index(std::size_t k);

  /// 0.0 or 1.0 with success probability p; exact for p = 0 and p = 1.
  double bernoulli(double p);

  /// Standard normal deviate.
  double normal();

  /// Gamma(shape, 1) deviate, shape > 0.
  double gamma(double shape);

  /// Beta(a, b) deviate via the gamma ratio.
  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
};

/// Per-run stream pair. The environment stream feeds reward draws only and
/// the policy stream feeds policy-side randomness (posterior samples, action
/// realization). Separating them makes online/batched/short runs with the
/// same run seed draw identical rewards step for step, which is what the
/// b = 1 equivalence and the paired bound estimates rely on.
struct RunStreams {
  Rng env;
  Rng policy;
};

RunStreams make_run_streams(std::uint64_t run_seed);

}  // namespace batchbandit
