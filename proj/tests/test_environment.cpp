#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "batchbandit/environment.hpp"
#include "batchbandit/experiments.hpp"

using namespace batchbandit;

TEST_CASE("bernoulli presets resolve to the published means") {
  const Environment env1 = make_environment(preset_environment("env1"));
  CHECK(env1.arms() == 2);
  CHECK(env1.optimal_mean() == doctest::Approx(0.7));
  CHECK(env1.best_arm() == 0);

  const Environment env4 = make_environment(preset_environment("env4"));
  CHECK(env4.arms() == 4);
  CHECK(env4.optimal_mean() == doctest::Approx(0.61));
  CHECK(env4.best_arm() == 3);
  CHECK(env4.mean(2) == doctest::Approx(0.47));

  const Environment env5 = make_environment(preset_environment("env5"));
  CHECK(env5.optimal_mean() == doctest::Approx(0.75));

  CHECK_THROWS_AS(preset_environment("env7"), ConfigError);
}

TEST_CASE("suboptimality gaps") {
  const Environment env6 = make_environment(preset_environment("env6"));
  const std::vector<double> expected = {0.0, 0.2, 0.4, 0.6};
  REQUIRE(env6.gaps().size() == 4);
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(env6.gaps()[a] == doctest::Approx(expected[a]));
  }

  const Environment env3 = make_environment(preset_environment("env3"));
  CHECK(env3.gaps()[0] == doctest::Approx(0.0));
  CHECK(env3.gaps()[1] == doctest::Approx(0.6));

  EnvSpec flat;
  flat.family = RewardFamily::kBernoulli;
  flat.means = {0.5, 0.5};
  const Environment symmetric = make_environment(flat);
  CHECK(symmetric.gaps()[0] == 0.0);
  CHECK(symmetric.gaps()[1] == 0.0);
  CHECK(symmetric.best_arm_set() == std::vector<std::size_t>{0, 1});
  CHECK(symmetric.best_arm() == 0);
}

TEST_CASE("environment validation rejects bad parameters") {
  EnvSpec spec;
  spec.family = RewardFamily::kBernoulli;

  spec.means = {0.7};
  CHECK_THROWS_AS(make_environment(spec), std::invalid_argument);

  spec.means = {0.7, 1.2};
  CHECK_THROWS_AS(make_environment(spec), std::invalid_argument);

  spec.means = {0.7, -0.1};
  CHECK_THROWS_AS(make_environment(spec), std::invalid_argument);

  spec.means = {0.7, std::nan("")};
  CHECK_THROWS_AS(make_environment(spec), std::invalid_argument);

  spec.family = RewardFamily::kGaussian;
  spec.means = {0.0, 1.0};
  spec.stddevs = {1.0, -2.0};
  CHECK_THROWS_AS(make_environment(spec), std::invalid_argument);

  EnvSpec linear;
  linear.family = RewardFamily::kLinear;
  linear.thetas = {{0.1, 0.2}, {0.3}};
  CHECK_THROWS_AS(make_environment(linear), std::invalid_argument);
  linear.thetas = {{0.1, 0.2}};
  CHECK_THROWS_AS(make_environment(linear), std::invalid_argument);
}

TEST_CASE("gaussian environments sample around their means") {
  EnvSpec spec;
  spec.family = RewardFamily::kGaussian;
  spec.means = {1.5, -0.5};
  spec.stddevs = {0.5, 2.0};
  const Environment env = make_environment(spec);
  CHECK(env.best_arm() == 0);

  Rng rng(31);
  const int draws = 20000;
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) {
    sum += env.sample(0, rng);
  }
  // se = 0.5 / sqrt(20000) ~ 0.0035
  CHECK(std::abs(sum / draws - 1.5) < 0.02);
}

TEST_CASE("linear environments carry contexts and exact marginal means") {
  const Environment env = make_environment(preset_environment("linear_demo"));
  CHECK(env.family() == RewardFamily::kLinear);
  CHECK(env.arms() == 3);
  CHECK(env.context_dim() == 5);
  for (std::size_t a = 0; a < env.arms(); ++a) {
    CHECK(env.mean(a) == 0.5);
  }

  Rng rng(17);
  const auto ctx = env.sample_context(rng);
  CHECK(ctx.size() == 5);
  const double r = env.sample_reward_in_context(1, ctx, rng);
  CHECK((r == 0.0 || r == 1.0));

  CHECK_THROWS_AS(env.sample(0, rng), std::invalid_argument);
  CHECK_THROWS_AS(env.sample_reward_in_context(0, std::vector<double>{1.0}, rng),
                  std::invalid_argument);

  // The marginal mean really is one half: tally over random contexts.
  double sum = 0.0;
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) {
    const auto x = env.sample_context(rng);
    sum += env.sample_reward_in_context(0, x, rng);
  }
  CHECK(std::abs(sum / draws - 0.5) < 0.01);
}
