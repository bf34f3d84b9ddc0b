#include "batchbandit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "batchbandit/csv.hpp"
#include "batchbandit/sweep.hpp"

namespace batchbandit {

namespace {

using nlohmann::json;

constexpr std::uint64_t kReplayCmdTag = 0x7265706c6179636dULL;
constexpr std::uint64_t kGenLogCmdTag = 0x67656e6c6f67636dULL;

const std::vector<std::pair<const char*, std::vector<double>>> kBernoulliPresets = {
    {"env1", {0.7, 0.5}},
    {"env2", {0.7, 0.4}},
    {"env3", {0.7, 0.1}},
    {"env4", {0.35, 0.18, 0.47, 0.61}},
    {"env5", {0.40, 0.75, 0.57, 0.49}},
    {"env6", {0.70, 0.50, 0.30, 0.10}},
};

EnvSpec linear_demo_spec() {
  EnvSpec spec;
  spec.family = RewardFamily::kLinear;
  spec.name = "linear_demo";
  spec.thetas = {
      {0.5, 0.3, 0.0, -0.2, 0.1},
      {-0.2, 0.6, 0.4, 0.0, -0.3},
      {0.1, -0.4, 0.5, 0.3, 0.2},
  };
  return spec;
}

}  // namespace

EnvSpec preset_environment(const std::string& name) {
  for (const auto& [preset, means] : kBernoulliPresets) {
    if (name == preset) {
      EnvSpec spec;
      spec.family = RewardFamily::kBernoulli;
      spec.name = name;
      spec.means = means;
      return spec;
    }
  }
  if (name == "linear_demo") {
    return linear_demo_spec();
  }
  throw ConfigError("unknown environment preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [preset, means] : kBernoulliPresets) {
    (void)means;
    names.emplace_back(preset);
  }
  names.emplace_back("linear_demo");
  return names;
}

namespace {

RewardFamily parse_family(const std::string& name, const std::string& field) {
  if (name == "bernoulli") return RewardFamily::kBernoulli;
  if (name == "gaussian") return RewardFamily::kGaussian;
  if (name == "linear") return RewardFamily::kLinear;
  throw ConfigError(field + ": unknown family '" + name + "'");
}

std::vector<double> parse_double_array(const json& value, const std::string& field) {
  if (!value.is_array()) {
    throw ConfigError(field + ": expected an array of numbers");
  }
  std::vector<double> out;
  for (const auto& item : value) {
    if (!item.is_number()) {
      throw ConfigError(field + ": expected an array of numbers");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

EnvSpec parse_env(const json& value, const std::string& field) {
  if (value.is_string()) {
    return preset_environment(value.get<std::string>());
  }
  if (!value.is_object()) {
    throw ConfigError(field + ": expected a preset name or an environment object");
  }
  EnvSpec spec;
  bool have_family = false;
  for (const auto& [key, item] : value.items()) {
    if (key == "family") {
      if (!item.is_string()) {
        throw ConfigError(field + ".family: expected a string");
      }
      spec.family = parse_family(item.get<std::string>(), field + ".family");
      have_family = true;
    } else if (key == "name") {
      if (!item.is_string()) {
        throw ConfigError(field + ".name: expected a string");
      }
      spec.name = item.get<std::string>();
    } else if (key == "means") {
      spec.means = parse_double_array(item, field + ".means");
    } else if (key == "stddevs") {
      spec.stddevs = parse_double_array(item, field + ".stddevs");
    } else if (key == "thetas") {
      if (!item.is_array()) {
        throw ConfigError(field + ".thetas: expected an array of arrays");
      }
      for (std::size_t i = 0; i < item.size(); ++i) {
        spec.thetas.push_back(parse_double_array(item[i], field + ".thetas[" + std::to_string(i) + "]"));
      }
    } else {
      throw ConfigError(field + ": unknown key '" + key + "'");
    }
  }
  if (!have_family) {
    throw ConfigError(field + ".family: missing");
  }
  return spec;
}

PolicySpec parse_policy(const json& value, const std::string& field) {
  PolicySpec spec;
  if (value.is_string()) {
    spec.kind = value.get<std::string>();
    return spec;
  }
  if (!value.is_object()) {
    throw ConfigError(field + ": expected a policy name or object");
  }
  for (const auto& [key, item] : value.items()) {
    if (key == "kind") {
      if (!item.is_string()) {
        throw ConfigError(field + ".kind: expected a string");
      }
      spec.kind = item.get<std::string>();
    } else {
      if (!item.is_number()) {
        throw ConfigError(field + "." + key + ": policy parameters must be numbers");
      }
      spec.params[key] = item.get<double>();
    }
  }
  if (spec.kind.empty()) {
    throw ConfigError(field + ".kind: missing");
  }
  return spec;
}

std::size_t parse_positive_integer(const json& value, const std::string& field) {
  if (!value.is_number_integer() || value.get<long long>() < 1) {
    throw ConfigError(field + ": expected a positive integer");
  }
  return static_cast<std::size_t>(value.get<long long>());
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config root must be an object");
  }

  ExperimentConfig config;
  bool modes_set = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "env") {
      config.envs = {parse_env(value, "env")};
    } else if (key == "envs") {
      if (!value.is_array() || value.empty()) {
        throw ConfigError("envs: expected a nonempty array");
      }
      config.envs.clear();
      for (std::size_t i = 0; i < value.size(); ++i) {
        config.envs.push_back(parse_env(value[i], "envs[" + std::to_string(i) + "]"));
      }
    } else if (key == "policy") {
      config.policies = {parse_policy(value, "policy")};
    } else if (key == "policies") {
      if (!value.is_array() || value.empty()) {
        throw ConfigError("policies: expected a nonempty array");
      }
      config.policies.clear();
      for (std::size_t i = 0; i < value.size(); ++i) {
        config.policies.push_back(parse_policy(value[i], "policies[" + std::to_string(i) + "]"));
      }
    } else if (key == "horizon") {
      config.horizon = parse_positive_integer(value, "horizon");
    } else if (key == "batch_sizes") {
      if (!value.is_array() || value.empty()) {
        throw ConfigError("batch_sizes: expected a nonempty array");
      }
      config.batch_sizes.clear();
      for (std::size_t i = 0; i < value.size(); ++i) {
        config.batch_sizes.push_back(
            parse_positive_integer(value[i], "batch_sizes[" + std::to_string(i) + "]"));
      }
    } else if (key == "replicates") {
      config.replicates = parse_positive_integer(value, "replicates");
    } else if (key == "seed") {
      if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw ConfigError("seed: expected a nonnegative integer");
      }
      config.seed = value.get<std::uint64_t>();
    } else if (key == "modes") {
      if (!value.is_array() || value.empty()) {
        throw ConfigError("modes: expected a nonempty array");
      }
      config.modes.clear();
      for (const auto& item : value) {
        if (!item.is_string()) {
          throw ConfigError("modes: expected mode names");
        }
        try {
          config.modes.push_back(parse_mode(item.get<std::string>()));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("modes: ") + e.what());
        }
      }
      modes_set = true;
    } else if (key == "out") {
      if (!value.is_string()) {
        throw ConfigError("out: expected a string");
      }
      config.out_dir = value.get<std::string>();
    } else if (key == "threads") {
      if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw ConfigError("threads: expected a nonnegative integer");
      }
      config.threads = value.get<unsigned>();
    } else if (key == "baseline") {
      if (!value.is_string()) {
        throw ConfigError("baseline: expected a policy label");
      }
      config.baseline = value.get<std::string>();
    } else if (key == "log_size") {
      config.log_size = parse_positive_integer(value, "log_size");
    } else {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  (void)modes_set;
  return config;
}

void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides) {
  if (overrides.env) {
    config.envs = {preset_environment(*overrides.env)};
  }
  if (overrides.policy) {
    PolicySpec spec;
    spec.kind = *overrides.policy;
    config.policies = {spec};
  }
  if (overrides.horizon) {
    config.horizon = *overrides.horizon;
  }
  if (overrides.batch_sizes) {
    config.batch_sizes = *overrides.batch_sizes;
  }
  if (overrides.replicates) {
    config.replicates = *overrides.replicates;
  }
  if (overrides.seed) {
    config.seed = *overrides.seed;
  }
  if (overrides.modes) {
    config.modes.clear();
    for (const auto& name : *overrides.modes) {
      try {
        config.modes.push_back(parse_mode(name));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("modes: ") + e.what());
      }
    }
    if (config.modes.empty()) {
      throw ConfigError("modes: expected at least one mode");
    }
  }
  if (overrides.out_dir) {
    config.out_dir = *overrides.out_dir;
  }
  if (overrides.threads) {
    config.threads = *overrides.threads;
  }
  if (overrides.log_size) {
    config.log_size = *overrides.log_size;
  }
}

namespace {

struct IssueList {
  std::vector<std::string> issues;

  void add(const std::string& issue) { issues.push_back(issue); }

  void raise_if_any() const {
    if (issues.empty()) {
      return;
    }
    std::string message = "invalid configuration:";
    for (const auto& issue : issues) {
      message += "\n  - " + issue;
    }
    throw ConfigError(message);
  }
};

void check_envs(const ExperimentConfig& config, IssueList& issues) {
  if (config.envs.empty()) {
    issues.add("env: at least one environment is required");
  }
  for (std::size_t i = 0; i < config.envs.size(); ++i) {
    try {
      (void)make_environment(config.envs[i]);
    } catch (const std::exception& e) {
      issues.add("envs[" + std::to_string(i) + "]: " + e.what());
    }
  }
}

void check_base(const ExperimentConfig& config, IssueList& issues) {
  check_envs(config, issues);
  if (config.policies.empty()) {
    issues.add("policy: at least one policy is required");
  }
}

void check_policies_against(const ExperimentConfig& config, std::size_t arms,
                            std::size_t context_dim, IssueList& issues) {
  for (std::size_t i = 0; i < config.policies.size(); ++i) {
    try {
      (void)make_policy(config.policies[i], arms, context_dim);
    } catch (const std::exception& e) {
      issues.add("policies[" + std::to_string(i) + "]: " + e.what());
    }
  }
}

void check_simulation_scales(const ExperimentConfig& config, std::size_t min_batch,
                             IssueList& issues) {
  if (config.horizon < 1) {
    issues.add("horizon: must be positive");
  }
  if (config.batch_sizes.empty()) {
    issues.add("batch_sizes: must be nonempty");
  }
  for (std::size_t i = 0; i < config.batch_sizes.size(); ++i) {
    const std::size_t b = config.batch_sizes[i];
    if (b < min_batch || b > config.horizon) {
      issues.add("batch_sizes[" + std::to_string(i) + "]: must lie in [" +
                 std::to_string(min_batch) + ", horizon]");
    }
  }
  if (config.replicates < 1) {
    issues.add("replicates: must be positive");
  }
  if (config.modes.empty()) {
    issues.add("modes: must be nonempty");
  }
}

void check_stochastic_envs(const ExperimentConfig& config, IssueList& issues) {
  for (std::size_t i = 0; i < config.envs.size(); ++i) {
    if (config.envs[i].family == RewardFamily::kLinear) {
      issues.add("envs[" + std::to_string(i) +
                 "]: linear environments are replay-only; simulation needs bernoulli or gaussian");
    }
  }
}

std::string env_display_name(const EnvSpec& spec) {
  return make_environment(spec).name();
}

}  // namespace

void cmd_simulate(const ExperimentConfig& config) {
  IssueList issues;
  check_base(config, issues);
  check_stochastic_envs(config, issues);
  check_simulation_scales(config, /*min_batch=*/1, issues);
  if (issues.issues.empty()) {
    // Arm counts may differ per environment, so validate every pairing.
    for (const auto& env_spec : config.envs) {
      check_policies_against(config, make_environment(env_spec).arms(), 0, issues);
    }
  }
  issues.raise_if_any();

  CsvBuilder runs_csv;
  runs_csv.field("env").field("policy").field("mode").field("batch_size").field("replicate")
      .field("seed").field("final_regret").field("total_reward");
  runs_csv.end_row();

  CsvBuilder summary_csv;
  summary_csv.field("env").field("policy").field("mode").field("batch_size").field("replicates")
      .field("mean_regret").field("std").field("ci95_lo").field("ci95_hi");
  summary_csv.end_row();

  for (const auto& env_spec : config.envs) {
    const std::string env_name = env_display_name(env_spec);
    for (const auto& policy_spec : config.policies) {
      SweepConfig sweep;
      sweep.env = env_spec;
      sweep.policy = policy_spec;
      sweep.requested_horizon = config.horizon;
      sweep.batch_sizes = config.batch_sizes;
      sweep.replicates = config.replicates;
      sweep.master_seed = config.seed;
      sweep.modes = config.modes;
      sweep.threads = config.threads;

      const SweepResult result = run_sweep(sweep);
      const std::string policy_label = policy_spec.label();

      for (const RunRecord& run : result.runs) {
        runs_csv.field(env_name).field(policy_label).field(mode_name(run.mode))
            .field(run.batch_size).field(run.replicate).field(run.seed)
            .field(run.final_regret).field(run.total_reward);
        runs_csv.end_row();
      }
      for (const CellSummary& cell : result.cells) {
        summary_csv.field(env_name).field(policy_label).field(mode_name(cell.mode))
            .field(cell.batch_size).field(cell.replicates).field(cell.regret.mean)
            .field(cell.regret.sd).field(cell.regret.ci_lo).field(cell.regret.ci_hi);
        summary_csv.end_row();
      }
      std::cout << "simulate: env=" << env_name << " policy=" << policy_label << " ("
                << result.cells.size() << " cells, " << result.runs.size() << " runs)\n";
    }
  }

  write_file_atomic(config.out_dir + "/runs.csv", runs_csv.str());
  write_file_atomic(config.out_dir + "/summary.csv", summary_csv.str());
  std::cout << "simulate: wrote " << config.out_dir << "/runs.csv and " << config.out_dir
            << "/summary.csv\n";
}

std::vector<BoundReport> cmd_verify_bounds(const ExperimentConfig& config) {
  IssueList issues;
  check_base(config, issues);
  check_stochastic_envs(config, issues);
  check_simulation_scales(config, /*min_batch=*/2, issues);
  if (config.replicates < 2) {
    issues.add("replicates: bound verification needs at least 2");
  }
  if (issues.issues.empty()) {
    for (const auto& env_spec : config.envs) {
      check_policies_against(config, make_environment(env_spec).arms(), 0, issues);
    }
  }
  issues.raise_if_any();

  CsvBuilder csv;
  csv.field("env").field("policy").field("n").field("b").field("M")
      .field("reg_online").field("reg_batch").field("b_reg_short")
      .field("ci_online_lo").field("ci_online_hi").field("ci_batch_lo").field("ci_batch_hi")
      .field("ci_short_lo").field("ci_short_hi")
      .field("verdict_left").field("verdict_right").field("slack_left").field("slack_right");
  csv.end_row();

  std::vector<BoundReport> reports;
  std::string text;
  for (const auto& env_spec : config.envs) {
    const Environment env = make_environment(env_spec);
    for (const auto& policy_spec : config.policies) {
      for (std::size_t b : config.batch_sizes) {
        BoundReport report = verify_regret_sandwich(policy_spec, env, config.horizon, b,
                                                    config.replicates, config.seed,
                                                    config.threads);
        csv.field(report.env_name).field(report.policy_label).field(report.horizon)
            .field(report.batch_size).field(report.batches)
            .field(report.online.mean).field(report.batched.mean).field(report.short_scaled.mean)
            .field(report.online.ci_lo).field(report.online.ci_hi)
            .field(report.batched.ci_lo).field(report.batched.ci_hi)
            .field(report.short_scaled.ci_lo).field(report.short_scaled.ci_hi)
            .field(verdict_name(report.verdict_left)).field(verdict_name(report.verdict_right))
            .field(report.slack_left).field(report.slack_right);
        csv.end_row();
        text += render_text(report);
        text += "\n";
        std::cout << "verify-bounds: env=" << report.env_name << " policy="
                  << report.policy_label << " b=" << b << " left="
                  << verdict_name(report.verdict_left) << " right="
                  << verdict_name(report.verdict_right) << "\n";
        reports.push_back(std::move(report));
      }
    }
  }

  write_file_atomic(config.out_dir + "/bounds.csv", csv.str());
  write_file_atomic(config.out_dir + "/bounds.txt", text);
  std::cout << "verify-bounds: wrote " << config.out_dir << "/bounds.csv and " << config.out_dir
            << "/bounds.txt\n";
  return reports;
}

std::vector<ReplayResult> cmd_replay(const ExperimentConfig& config, const std::string& log_path) {
  IssueList issues;
  check_base(config, issues);
  if (config.batch_sizes.empty()) {
    issues.add("batch_sizes: must be nonempty");
  }
  if (!config.baseline.empty()) {
    bool found = false;
    for (const auto& policy : config.policies) {
      found = found || policy.label() == config.baseline;
    }
    if (!found) {
      issues.add("baseline: '" + config.baseline + "' does not match any policy label");
    }
  }
  issues.raise_if_any();

  const Environment env = make_environment(config.envs.front());
  const auto events = load_log(log_path, env.arms());
  const std::size_t dim = events.front().context.size();

  {
    IssueList policy_issues;
    check_policies_against(config, env.arms(), dim, policy_issues);
    policy_issues.raise_if_any();
  }

  // Results in (policy, batch size) order.
  std::vector<ReplayResult> results;
  for (std::size_t pi = 0; pi < config.policies.size(); ++pi) {
    for (std::size_t bi = 0; bi < config.batch_sizes.size(); ++bi) {
      auto policy = make_policy(config.policies[pi], env.arms(), dim);
      results.push_back(replay_evaluate(*policy, events, config.batch_sizes[bi],
                                        derive_seed(config.seed, {kReplayCmdTag, pi, bi})));
    }
  }

  const bool normalized = !config.baseline.empty();
  std::size_t baseline_index = 0;
  if (normalized) {
    for (std::size_t pi = 0; pi < config.policies.size(); ++pi) {
      if (config.policies[pi].label() == config.baseline) {
        baseline_index = pi;
        break;
      }
    }
  }

  CsvBuilder csv;
  csv.field("policy").field("batch_size").field("total_events").field("matched")
      .field("conversion_rate");
  if (normalized) {
    csv.field("relative_cr");
  }
  csv.end_row();

  const std::size_t n_batches = config.batch_sizes.size();
  for (std::size_t pi = 0; pi < config.policies.size(); ++pi) {
    for (std::size_t bi = 0; bi < n_batches; ++bi) {
      const ReplayResult& result = results[pi * n_batches + bi];
      csv.field(config.policies[pi].label()).field(config.batch_sizes[bi])
          .field(result.total_events).field(result.matched);
      if (result.conversion_rate) {
        csv.field(*result.conversion_rate);
      } else {
        csv.field("");
      }
      if (normalized) {
        const auto& base = results[baseline_index * n_batches + bi].conversion_rate;
        if (result.conversion_rate && base && *base != 0.0) {
          csv.field(*result.conversion_rate / *base);
        } else {
          csv.field("");
        }
      }
      csv.end_row();
      std::cout << "replay: policy=" << config.policies[pi].label() << " b="
                << config.batch_sizes[bi] << " matched=" << result.matched << "/"
                << result.total_events;
      if (result.conversion_rate) {
        std::cout << " cr=" << *result.conversion_rate;
      } else {
        std::cout << " cr=n/a (no matches)";
      }
      std::cout << "\n";
    }
  }

  write_file_atomic(config.out_dir + "/replay.csv", csv.str());
  std::cout << "replay: wrote " << config.out_dir << "/replay.csv\n";
  return results;
}

void cmd_gen_log(const ExperimentConfig& config, const std::string& log_path) {
  IssueList issues;
  check_envs(config, issues);
  if (config.log_size < 1) {
    issues.add("log_size: must be positive");
  }
  issues.raise_if_any();

  const Environment env = make_environment(config.envs.front());
  const auto events =
      generate_synthetic_log(env, config.log_size, derive_seed(config.seed, {kGenLogCmdTag}));
  write_log(log_path, events, env.context_dim());

  std::vector<std::size_t> counts(env.arms(), 0);
  for (const auto& event : events) {
    counts[event.action] += 1;
  }
  std::cout << "gen-log: wrote " << log_path << " (events=" << events.size()
            << ", K=" << env.arms() << ", d=" << env.context_dim() << ")\n";
  std::cout << "gen-log: arm frequencies:";
  for (std::size_t a = 0; a < counts.size(); ++a) {
    std::cout << " " << a << ":"
              << static_cast<double>(counts[a]) / static_cast<double>(events.size());
  }
  std::cout << "\n";
}

}  // namespace batchbandit
