#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <set>

#include "batchbandit/batch_grid.hpp"
#include "batchbandit/decision_rule.hpp"
#include "batchbandit/history.hpp"
#include "batchbandit/rng.hpp"
#include "support.hpp"

using namespace batchbandit;

namespace {

Environment bernoulli_env(std::vector<double> means) {
  EnvSpec spec;
  spec.family = RewardFamily::kBernoulli;
  spec.means = std::move(means);
  return make_environment(spec);
}

}  // namespace

TEST_CASE("make_grid basic shapes") {
  const BatchGrid exact = make_grid(100, 10);
  CHECK(exact.horizon == 100);
  CHECK(exact.batches == 10);
  CHECK(exact.boundaries.size() == 10);
  CHECK(exact.boundaries.front() == 0);
  CHECK(exact.boundaries.back() == 90);

  // Horizons that do not divide evenly are truncated down.
  const BatchGrid truncated = make_grid(105, 10);
  CHECK(truncated.horizon == 100);
  CHECK(truncated.batches == 10);

  const BatchGrid online = make_grid(100, 1);
  CHECK(online.horizon == 100);
  CHECK(online.batches == 100);

  CHECK_THROWS_AS(make_grid(100, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(5, 10), std::invalid_argument);
}

TEST_CASE("make_grid partitions the horizon for random (n, b)") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n_req = 1 + rng.uniform_index(3000);
    const std::size_t b = 1 + rng.uniform_index(n_req);
    const BatchGrid grid = make_grid(n_req, b);
    CHECK(grid.horizon % grid.batch_size == 0);
    CHECK(grid.batches * grid.batch_size == grid.horizon);
    CHECK(grid.horizon <= n_req);
    CHECK(n_req - grid.horizon < b);
    CHECK(grid.boundaries.size() == grid.batches);
  }
}

TEST_CASE("decision rule constructors and validity") {
  const DecisionRule pm = DecisionRule::point_mass(4, 2);
  CHECK(is_valid_rule(pm));
  std::size_t arm = 99;
  CHECK(pm.is_point_mass(&arm));
  CHECK(arm == 2);

  const DecisionRule uni = DecisionRule::uniform(3);
  CHECK(is_valid_rule(uni));
  CHECK_FALSE(uni.is_point_mass());

  DecisionRule bad;
  bad.probs = {0.5, 0.6};
  CHECK_FALSE(is_valid_rule(bad));
  bad.probs = {-0.1, 1.1};
  CHECK_FALSE(is_valid_rule(bad));
  bad.probs = {std::nan(""), 1.0};
  CHECK_FALSE(is_valid_rule(bad));
  bad.probs.clear();
  CHECK_FALSE(is_valid_rule(bad));

  CHECK_THROWS_AS(DecisionRule::point_mass(2, 5), std::out_of_range);
}

TEST_CASE("expected_reward on the preset-style environments") {
  const Environment env1 = bernoulli_env({0.7, 0.5});
  CHECK(expected_reward(DecisionRule::uniform(2), env1) == doctest::Approx(0.6));

  const Environment env2 = bernoulli_env({0.7, 0.4});
  CHECK(expected_reward(DecisionRule::point_mass(2, env2.best_arm()), env2) ==
        doctest::Approx(0.7));

  const Environment env4 = bernoulli_env({0.35, 0.18, 0.47, 0.61});
  CHECK(expected_reward(DecisionRule::point_mass(4, 2), env4) == doctest::Approx(0.47));
  CHECK(expected_reward(DecisionRule::point_mass(4, 1), env4) == doctest::Approx(0.18));

  CHECK_THROWS_AS(expected_reward(DecisionRule::uniform(3), env1), std::invalid_argument);
}

TEST_CASE("compare_rules orderings") {
  const Environment env1 = bernoulli_env({0.7, 0.5});
  const DecisionRule best = DecisionRule::point_mass(2, 0);
  const DecisionRule uni = DecisionRule::uniform(2);
  CHECK(compare_rules(best, uni, env1) == RuleOrdering::kBetter);
  CHECK(compare_rules(uni, best, env1) == RuleOrdering::kWorse);

  // Reflexivity: a rule is not worse than itself but not better either.
  CHECK(compare_rules(uni, uni, env1) == RuleOrdering::kEqual);
  CHECK(not_worse(compare_rules(uni, uni, env1)));

  const Environment env3 = bernoulli_env({0.7, 0.1});
  const DecisionRule worst = DecisionRule::point_mass(2, 1);
  CHECK(expected_reward(DecisionRule::uniform(2), env3) == doctest::Approx(0.4));
  CHECK(compare_rules(DecisionRule::uniform(2), worst, env3) == RuleOrdering::kBetter);

  CHECK_THROWS_AS(compare_rules(best, DecisionRule::uniform(3), env1), std::invalid_argument);
}

TEST_CASE("compare_rules is a total preorder on random rule triples") {
  const Environment env = bernoulli_env({0.35, 0.18, 0.47, 0.61});
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const DecisionRule a = testsupport::random_rule(4, rng);
    const DecisionRule b = testsupport::random_rule(4, rng);
    const DecisionRule c = testsupport::random_rule(4, rng);

    // Totality: one direction is always not-worse.
    CHECK((not_worse(compare_rules(a, b, env)) || not_worse(compare_rules(b, a, env))));
    // Transitivity of not-worse.
    if (not_worse(compare_rules(a, b, env)) && not_worse(compare_rules(b, c, env))) {
      CHECK(not_worse(compare_rules(a, c, env)));
    }
  }
}

TEST_CASE("sample_action realizes rules faithfully") {
  Rng rng(5);
  const DecisionRule pm = DecisionRule::point_mass(3, 1);
  // Point masses must not consume randomness.
  Rng probe_a(77);
  Rng probe_b(77);
  CHECK(sample_action(pm, probe_a) == 1);
  CHECK(probe_a.uniform01() == probe_b.uniform01());

  // A mixture consumes exactly one uniform draw.
  Rng mix_a(78);
  Rng mix_b(78);
  (void)mix_b.uniform01();
  (void)sample_action(DecisionRule::uniform(3), mix_a);
  CHECK(mix_a.uniform01() == mix_b.uniform01());

  // Frequencies follow the probabilities.
  DecisionRule skewed;
  skewed.probs = {0.8, 0.15, 0.05};
  std::size_t counts[3] = {0, 0, 0};
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    counts[sample_action(skewed, rng)] += 1;
  }
  CHECK(std::abs(static_cast<double>(counts[0]) / draws - 0.8) < 0.02);
  CHECK(std::abs(static_cast<double>(counts[2]) / draws - 0.05) < 0.01);
}

TEST_CASE("history visibility cutoff") {
  History history;
  CHECK(history.size() == 0);
  CHECK(history.visible_len() == 0);

  const std::size_t b = 4;
  for (std::size_t t = 0; t < 12; ++t) {
    history.append(t % 3, static_cast<double>(t));
    if ((t + 1) % b == 0) {
      history.release(b);
      CHECK(history.visible_len() % b == 0);
    }
    CHECK(history.visible_len() <= history.size());
  }
  CHECK(history.visible_len() == 12);
  CHECK(history.pending().empty());
  CHECK(history.visible().size() == 12);
  CHECK(history.entries()[5] == HistoryEntry{2, 5.0});

  CHECK_THROWS_AS(history.release(1), std::logic_error);
}

TEST_CASE("rng draw semantics") {
  Rng rng(123);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // Degenerate bernoulli probabilities are exact.
  for (int i = 0; i < 200; ++i) {
    CHECK(rng.bernoulli(1.0) == 1.0);
    CHECK(rng.bernoulli(0.0) == 0.0);
  }
  for (int i = 0; i < 200; ++i) {
    const double x = rng.beta(2.5, 3.5);
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    CHECK(std::isfinite(rng.normal()));
    CHECK(rng.gamma(0.4) > 0.0);
  }
  CHECK_THROWS_AS(rng.gamma(0.0), std::invalid_argument);
  CHECK_THROWS_AS(rng.uniform_index(0), std::invalid_argument);
}

TEST_CASE("rng streams are reproducible and seed derivation separates runs") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform01() == b.uniform01());
  }

  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 100; ++i) {
    seeds.insert(derive_seed(7, {1, i, 0}));
    seeds.insert(derive_seed(7, {1, i, 1}));
  }
  CHECK(seeds.size() == 200);
  CHECK(derive_seed(7, {1, 2, 3}) == derive_seed(7, {1, 2, 3}));
  CHECK(derive_seed(7, {1, 2, 3}) != derive_seed(8, {1, 2, 3}));
}

TEST_CASE("bernoulli sampling matches its mean (law of large numbers)") {
  const Environment env = bernoulli_env({0.7, 0.5});
  Rng rng(99);
  const int draws = 100000;
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = env.sample(0, rng);
    CHECK((x == 0.0 || x == 1.0));
    sum += x;
  }
  CHECK(std::abs(sum / draws - 0.7) < 0.01);
}

TEST_CASE("degenerate bernoulli arms") {
  const Environment env = bernoulli_env({1.0, 0.0});
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(env.sample(0, rng) == 1.0);
    CHECK(env.sample(1, rng) == 0.0);
  }
  CHECK_THROWS_AS(env.sample(2, rng), std::out_of_range);
}
