#include "batchbandit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "batchbandit/parallel.hpp"

namespace batchbandit {

namespace {

constexpr std::uint64_t kImprovementTag = 0x696d70726f76652eULL;
constexpr std::uint64_t kMatchedTag = 0x6d61746368656421ULL;
constexpr std::uint64_t kBoundTag = 0x626f756e642e2e2eULL;
constexpr std::uint64_t kShortAltTag = 0x73686f7274616c74ULL;

}  // namespace

double pseudo_regret(const Trajectory& traj, const Environment& env) {
  const auto& gaps = env.gaps();
  double total = 0.0;
  for (std::size_t action : traj.actions) {
    if (action >= env.arms()) {
      throw std::invalid_argument("pseudo_regret: trajectory action outside the environment");
    }
    total += gaps[action];
  }
  if (!traj.pseudo_regret.empty() && std::abs(total - traj.pseudo_regret.back()) > 1e-9) {
    throw std::invalid_argument("pseudo_regret: trajectory was generated on a different environment");
  }
  return total;
}

DecisionRule average_decision_rule(std::span<const DecisionRule> rules) {
  if (rules.empty()) {
    throw std::invalid_argument("average_decision_rule: empty rule list");
  }
  const std::size_t arms = rules.front().arms();
  DecisionRule avg;
  avg.probs.assign(arms, 0.0);
  for (const DecisionRule& rule : rules) {
    if (rule.arms() != arms) {
      throw std::invalid_argument("average_decision_rule: mixed arm counts");
    }
    for (std::size_t a = 0; a < arms; ++a) {
      avg.probs[a] += rule.probs[a];
    }
  }
  const double inv = 1.0 / static_cast<double>(rules.size());
  for (double& p : avg.probs) {
    p *= inv;
  }
  return avg;
}

RegretTrace mean_regret_trace(std::span<const Trajectory> trajectories, const Environment& env) {
  if (trajectories.empty()) {
    throw std::invalid_argument("mean_regret_trace: no trajectories");
  }
  const std::size_t n = trajectories.front().grid.horizon;
  RegretTrace trace;
  trace.replicates = trajectories.size();
  trace.mode = trajectories.front().mode;
  trace.batch_size = trajectories.front().grid.batch_size;
  trace.mean.assign(n, 0.0);
  trace.se.assign(n, 0.0);

  for (const Trajectory& traj : trajectories) {
    if (traj.grid.horizon != n) {
      throw std::invalid_argument("mean_regret_trace: mismatched horizons");
    }
    (void)pseudo_regret(traj, env);  // consistency check against env
    for (std::size_t t = 0; t < n; ++t) {
      trace.mean[t] += traj.pseudo_regret[t];
    }
  }
  const double r = static_cast<double>(trace.replicates);
  for (double& m : trace.mean) {
    m /= r;
  }
  if (trace.replicates > 1) {
    for (std::size_t t = 0; t < n; ++t) {
      double ss = 0.0;
      for (const Trajectory& traj : trajectories) {
        const double d = traj.pseudo_regret[t] - trace.mean[t];
        ss += d * d;
      }
      trace.se[t] = std::sqrt(ss / (r * (r - 1.0)));
    }
  }
  return trace;
}

OrderingCheck check_average_rule_orderings(std::span<const DecisionRule> rules,
                                           const Environment& env) {
  if (rules.empty()) {
    throw std::invalid_argument("check_average_rule_orderings: empty rule sequence");
  }
  const std::size_t n = rules.size();
  std::vector<double> value(n);
  for (std::size_t t = 0; t < n; ++t) {
    value[t] = expected_reward(rules[t], env);
  }
  std::vector<double> prefix(n);
  double running = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    running += value[t];
    prefix[t] = running;
  }
  auto average_value = [&](std::size_t t) { return prefix[t] / static_cast<double>(t + 1); };

  OrderingCheck check;
  for (std::size_t n1 = 0; n1 < n; ++n1) {
    for (std::size_t n2 = n1 + 1; n2 < n; ++n2) {
      ++check.average_pairs;
      if (!(average_value(n2) > average_value(n1))) {
        ++check.average_violations;
      }
    }
  }
  // At the first step the rule and the running average coincide, so the
  // strict comparison starts at the second step.
  for (std::size_t t = 1; t < n; ++t) {
    ++check.step_points;
    if (!(value[t] > average_value(t))) {
      ++check.step_violations;
    }
  }
  return check;
}

namespace {

std::vector<std::size_t> default_checkpoints(std::size_t horizon) {
  std::vector<std::size_t> points;
  for (std::size_t t = 8; t < horizon; t *= 2) {
    points.push_back(t);
  }
  if (points.empty() || points.back() != horizon) {
    points.push_back(horizon);
  }
  return points;
}

}  // namespace

ImprovementReport check_improvement_rate(const PolicySpec& policy, const Environment& env,
                                         std::size_t horizon, std::size_t replicates,
                                         std::uint64_t seed, std::vector<std::size_t> checkpoints,
                                         unsigned threads,
                                         std::span<const std::uint64_t> replicate_seeds) {
  if (replicates < 2) {
    throw std::invalid_argument("check_improvement_rate: need at least two replicates");
  }
  if (!replicate_seeds.empty() && replicate_seeds.size() != replicates) {
    throw std::invalid_argument("check_improvement_rate: replicate seed list size mismatch");
  }
  if (checkpoints.empty()) {
    checkpoints = default_checkpoints(horizon);
  }
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (checkpoints.front() < 1 || checkpoints.back() > horizon) {
    throw std::invalid_argument("check_improvement_rate: checkpoints outside [1, horizon]");
  }

  const std::size_t n_points = checkpoints.size();
  std::vector<std::vector<double>> rates(replicates, std::vector<double>(n_points));

  parallel_for(replicates, threads, [&](std::size_t r) {
    const std::uint64_t run_seed =
        replicate_seeds.empty() ? derive_seed(seed, {kImprovementTag, r}) : replicate_seeds[r];
    auto p = make_policy(policy, env.arms());
    RunOptions options;
    options.record_rules = false;
    const Trajectory traj = run_online(*p, env, horizon, run_seed, options);
    for (std::size_t c = 0; c < n_points; ++c) {
      const std::size_t t = checkpoints[c];
      rates[r][c] = traj.pseudo_regret[t - 1] / static_cast<double>(t);
    }
  });

  ImprovementReport report;
  report.checkpoints = checkpoints;
  report.replicates = replicates;
  report.rate_mean.resize(n_points);
  report.rate_se.resize(n_points);

  std::vector<double> column(replicates);
  for (std::size_t c = 0; c < n_points; ++c) {
    for (std::size_t r = 0; r < replicates; ++r) {
      column[r] = rates[r][c];
    }
    const Summary s = summarize(column);
    report.rate_mean[c] = s.mean;
    report.rate_se[c] = s.se;
  }

  std::size_t conforming = 0;
  std::vector<double> lhs(replicates);
  std::vector<double> rhs(replicates);
  for (std::size_t c1 = 0; c1 < n_points; ++c1) {
    for (std::size_t c2 = c1 + 1; c2 < n_points; ++c2) {
      for (std::size_t r = 0; r < replicates; ++r) {
        lhs[r] = rates[r][c1];
        rhs[r] = rates[r][c2];
      }
      const PairedDiff d = paired_diff(lhs, rhs);
      RatePair pair;
      pair.t1 = checkpoints[c1];
      pair.t2 = checkpoints[c2];
      pair.diff = d.mean;
      pair.se = d.se;
      if (d.mean > 2.0 * d.se && d.mean > 0.0) {
        pair.status = PairStatus::kConforming;
        ++conforming;
      } else if (d.mean < -2.0 * d.se && d.mean < 0.0) {
        pair.status = PairStatus::kViolated;
      } else {
        pair.status = PairStatus::kInconclusive;
      }
      report.pairs.push_back(pair);
    }
  }
  report.conforming_fraction =
      report.pairs.empty() ? 0.0 : static_cast<double>(conforming) / static_cast<double>(report.pairs.size());
  return report;
}

MatchedRuns run_matched_modes(const PolicySpec& policy, const Environment& env,
                              const BatchGrid& grid, std::size_t replicates, std::uint64_t seed,
                              unsigned threads, bool record_rules) {
  if (replicates == 0) {
    throw std::invalid_argument("run_matched_modes: replicates must be positive");
  }
  MatchedRuns runs;
  runs.online.resize(replicates);
  runs.batched.resize(replicates);
  runs.short_run.resize(replicates);

  constexpr Mode kModes[] = {Mode::kOnline, Mode::kBatched, Mode::kShort};
  parallel_for(replicates * 3, threads, [&](std::size_t i) {
    const std::size_t r = i / 3;
    const Mode mode = kModes[i % 3];
    const std::uint64_t run_seed = derive_seed(seed, {kMatchedTag, r});
    auto p = make_policy(policy, env.arms());
    RunOptions options;
    options.record_rules = record_rules;
    Trajectory traj = run_mode(*p, env, grid, mode, run_seed, options);
    switch (mode) {
      case Mode::kOnline: runs.online[r] = std::move(traj); break;
      case Mode::kBatched: runs.batched[r] = std::move(traj); break;
      case Mode::kShort: runs.short_run[r] = std::move(traj); break;
    }
  });
  return runs;
}

VarianceAudit check_variance_contraction(const PolicySpec& policy, const Environment& env,
                                         const BatchGrid& grid, std::size_t replicates,
                                         std::uint64_t seed, unsigned threads) {
  if (replicates == 0) {
    throw std::invalid_argument("check_variance_contraction: replicates must be positive");
  }
  const auto& best = env.best_arm_set();
  const std::size_t n_best = best.size();
  const std::size_t n_bounds = grid.batches;

  // snapshots[mode][r] holds M * |best| variances in boundary-major order.
  std::vector<std::vector<std::vector<double>>> snapshots(
      3, std::vector<std::vector<double>>(replicates));

  constexpr Mode kModes[] = {Mode::kOnline, Mode::kBatched, Mode::kShort};
  parallel_for(replicates * 3, threads, [&](std::size_t i) {
    const std::size_t r = i / 3;
    const std::size_t mi = i % 3;
    const std::uint64_t run_seed = derive_seed(seed, {kMatchedTag, r});
    auto p = make_policy(policy, env.arms());

    std::vector<double>& slot = snapshots[mi][r];
    slot.reserve(n_bounds * n_best);
    RunOptions options;
    options.record_rules = false;
    options.observer = [&](std::size_t /*completed*/, const Policy& state) {
      const VarianceVector var = state.posterior_variance();
      for (std::size_t a : best) {
        slot.push_back(var[a]);
      }
    };
    (void)run_mode(*p, env, grid, kModes[mi], run_seed, options);
  });

  VarianceAudit audit;
  audit.batch_size = grid.batch_size;
  audit.batches = grid.batches;
  audit.replicates = replicates;
  audit.bayesian_variance = (policy.kind == "ts" || policy.kind == "lints");

  // Replicate means per boundary and best arm, per mode.
  auto mean_at = [&](std::size_t mi, std::size_t j, std::size_t bi) {
    double sum = 0.0;
    for (std::size_t r = 0; r < replicates; ++r) {
      sum += snapshots[mi][r][j * n_best + bi];
    }
    return sum / static_cast<double>(replicates);
  };

  std::size_t holding = 0;
  std::size_t holding_set = 0;
  for (std::size_t j = 0; j < n_bounds; ++j) {
    audit.boundaries.push_back(j + 1);
    const double on = mean_at(0, j, 0);
    const double bat = mean_at(1, j, 0);
    const double sh = mean_at(2, j, 0);
    audit.var_online.push_back(on);
    audit.var_batched.push_back(bat);
    audit.var_short.push_back(sh);

    const bool rep_holds = on <= bat && bat <= sh;
    bool set_holds = true;
    for (std::size_t bi = 0; bi < n_best; ++bi) {
      const double o = mean_at(0, j, bi);
      const double b = mean_at(1, j, bi);
      const double s = mean_at(2, j, bi);
      if (!(o <= b && b <= s)) {
        set_holds = false;
        break;
      }
    }
    audit.holds.push_back(rep_holds);
    audit.holds_set.push_back(set_holds);
    holding += rep_holds ? 1 : 0;
    holding_set += set_holds ? 1 : 0;
  }
  audit.fraction_holding = static_cast<double>(holding) / static_cast<double>(n_bounds);
  audit.fraction_holding_set = static_cast<double>(holding_set) / static_cast<double>(n_bounds);
  return audit;
}

PullCountAudit pull_count_ordering(const MatchedRuns& runs, const Environment& env) {
  const std::size_t replicates = runs.online.size();
  if (replicates == 0 || runs.batched.size() != replicates || runs.short_run.size() != replicates) {
    throw std::invalid_argument("pull_count_ordering: need matched nonempty run sets");
  }
  const BatchGrid& grid = runs.online.front().grid;
  for (const auto* set : {&runs.online, &runs.batched, &runs.short_run}) {
    for (const Trajectory& traj : *set) {
      if (!(traj.grid == grid)) {
        throw std::invalid_argument("pull_count_ordering: mismatched grids");
      }
    }
  }

  const std::size_t best = env.best_arm();
  PullCountAudit audit;
  audit.batch_size = grid.batch_size;
  audit.batches = grid.batches;
  audit.replicates = replicates;
  audit.best_arm = best;

  // Received-reward counts for the best arm per batch: every step counts for
  // online and batched runs; only the first step of a batch counts for the
  // short run.
  auto accumulate = [&](const std::vector<Trajectory>& set, bool first_step_only) {
    std::vector<double> cum(grid.batches, 0.0);
    for (const Trajectory& traj : set) {
      double running = 0.0;
      for (std::size_t j = 0; j < grid.batches; ++j) {
        const std::size_t start = grid.boundaries[j];
        if (first_step_only) {
          running += traj.actions[start] == best ? 1.0 : 0.0;
        } else {
          for (std::size_t s = 0; s < grid.batch_size; ++s) {
            running += traj.actions[start + s] == best ? 1.0 : 0.0;
          }
        }
        cum[j] += running;
      }
    }
    for (double& c : cum) {
      c /= static_cast<double>(replicates);
    }
    return cum;
  };

  audit.cum_online = accumulate(runs.online, false);
  audit.cum_batched = accumulate(runs.batched, false);
  audit.cum_short = accumulate(runs.short_run, true);

  std::size_t holding = 0;
  for (std::size_t j = 0; j < grid.batches; ++j) {
    const bool ok = audit.cum_online[j] > audit.cum_batched[j] &&
                    audit.cum_batched[j] >= audit.cum_short[j];
    audit.holds.push_back(ok);
    holding += ok ? 1 : 0;
  }
  audit.fraction_holding = static_cast<double>(holding) / static_cast<double>(grid.batches);
  return audit;
}

std::string_view verdict_name(BoundVerdict verdict) {
  switch (verdict) {
    case BoundVerdict::kHolds: return "holds";
    case BoundVerdict::kHoldsWithinCi: return "holds-within-ci";
    case BoundVerdict::kViolated: return "violated";
    case BoundVerdict::kDegenerateEqual: return "degenerate-equal";
  }
  return "unknown";
}

namespace {

BoundVerdict judge(const PairedDiff& d, bool strict) {
  if (d.se == 0.0 && d.mean == 0.0) {
    return BoundVerdict::kDegenerateEqual;
  }
  if (d.mean < -2.0 * d.se) {
    return BoundVerdict::kViolated;
  }
  if (strict) {
    return d.mean > 2.0 * d.se ? BoundVerdict::kHolds : BoundVerdict::kHoldsWithinCi;
  }
  return d.mean >= 0.0 ? BoundVerdict::kHolds : BoundVerdict::kHoldsWithinCi;
}

EstimateCi to_estimate(const Summary& s) { return EstimateCi{s.mean, s.ci_lo, s.ci_hi}; }

}  // namespace

BoundReport verify_regret_sandwich(const PolicySpec& policy, const Environment& env,
                                   std::size_t horizon, std::size_t batch_size,
                                   std::size_t replicates, std::uint64_t seed, unsigned threads,
                                   std::span<const std::uint64_t> replicate_seeds) {
  if (batch_size < 2) {
    throw std::invalid_argument("verify_regret_sandwich: batch size must be at least 2");
  }
  if (replicates < 2) {
    throw std::invalid_argument("verify_regret_sandwich: need at least two replicates");
  }
  if (!replicate_seeds.empty() && replicate_seeds.size() != replicates) {
    throw std::invalid_argument("verify_regret_sandwich: replicate seed list size mismatch");
  }
  const BatchGrid grid = make_grid(horizon, batch_size);
  const BatchGrid short_grid = make_grid(grid.batches, 1);

  std::vector<double> reg_online(replicates);
  std::vector<double> reg_batched(replicates);
  std::vector<double> reg_short(replicates);
  std::vector<double> reg_short_alt(replicates);

  parallel_for(replicates, threads, [&](std::size_t r) {
    const std::uint64_t run_seed =
        replicate_seeds.empty() ? derive_seed(seed, {kBoundTag, r}) : replicate_seeds[r];
    RunOptions options;
    options.record_rules = false;

    auto p_online = make_policy(policy, env.arms());
    reg_online[r] = run_mode(*p_online, env, grid, Mode::kOnline, run_seed, options).final_regret();

    auto p_batched = make_policy(policy, env.arms());
    reg_batched[r] =
        run_mode(*p_batched, env, grid, Mode::kBatched, run_seed, options).final_regret();

    auto p_short = make_policy(policy, env.arms());
    reg_short[r] = run_mode(*p_short, env, grid, Mode::kShort, run_seed, options).final_regret();

    // Independent-agents estimator of the same benchmark: one online run of
    // horizon M, scaled by b.
    auto p_alt = make_policy(policy, env.arms());
    reg_short_alt[r] = static_cast<double>(batch_size) *
                       run_mode(*p_alt, env, short_grid, Mode::kOnline,
                                mix_seed(run_seed, kShortAltTag), options)
                           .final_regret();
  });

  BoundReport report;
  report.env_name = env.name();
  report.policy_label = policy.label();
  report.horizon = grid.horizon;
  report.batch_size = batch_size;
  report.batches = grid.batches;
  report.replicates = replicates;
  report.online = to_estimate(summarize(reg_online));
  report.batched = to_estimate(summarize(reg_batched));
  report.short_scaled = to_estimate(summarize(reg_short));
  report.short_independent = to_estimate(summarize(reg_short_alt));

  const PairedDiff left = paired_diff(reg_batched, reg_online);
  const PairedDiff right = paired_diff(reg_short, reg_batched);
  const PairedDiff outer = paired_diff(reg_short, reg_online);
  report.slack_left = left.mean;
  report.se_left = left.se;
  report.slack_right = right.mean;
  report.se_right = right.se;
  report.slack_outer = outer.mean;
  report.se_outer = outer.se;
  report.verdict_left = judge(left, /*strict=*/true);
  report.verdict_right = judge(right, /*strict=*/false);
  report.verdict_outer = judge(outer, /*strict=*/true);
  return report;
}

std::string render_text(const BoundReport& report) {
  std::ostringstream out;
  out << "sandwich check: env=" << report.env_name << " policy=" << report.policy_label
      << " n=" << report.horizon << " b=" << report.batch_size << " M=" << report.batches
      << " replicates=" << report.replicates << "\n";
  auto line = [&](const char* label, const EstimateCi& e) {
    out << "  " << label << " = " << e.mean << "  [" << e.ci_lo << ", " << e.ci_hi << "]\n";
  };
  line("online regret          R_n(online) ", report.online);
  line("batched regret         R_n(batched)", report.batched);
  line("short regret (scaled)  b*R_M       ", report.short_scaled);
  line("short regret (indep)   b*R_M'      ", report.short_independent);
  out << "  online < batched : " << verdict_name(report.verdict_left)
      << " (slack=" << report.slack_left << ", se=" << report.se_left << ")\n";
  out << "  batched <= b*R_M : " << verdict_name(report.verdict_right)
      << " (slack=" << report.slack_right << ", se=" << report.se_right << ")\n";
  out << "  online < b*R_M   : " << verdict_name(report.verdict_outer)
      << " (slack=" << report.slack_outer << ", se=" << report.se_outer << ")\n";
  return out.str();
}

}  // namespace batchbandit
