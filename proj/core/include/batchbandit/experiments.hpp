#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "batchbandit/analysis.hpp"
#include "batchbandit/environment.hpp"
#include "batchbandit/policy.hpp"
#include "batchbandit/replay.hpp"
#include "batchbandit/runner.hpp"

namespace batchbandit {

/// Raised for invalid configuration; the message lists every offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Named environments: env1..env6 are the standard bernoulli presets
/// ([0.7,0.5], [0.7,0.4], [0.7,0.1], [0.35,0.18,0.47,0.61],
/// [0.40,0.75,0.57,0.49], [0.70,0.50,0.30,0.10]); linear_demo is a 3-arm,
/// 5-feature contextual environment for replay experiments.
EnvSpec preset_environment(const std::string& name);
std::vector<std::string> preset_names();

/// Experiment description shared by all commands; a JSON file plus optional
/// command line overrides. Fields irrelevant to a command are ignored by it.
struct ExperimentConfig {
  std::vector<EnvSpec> envs;
  std::vector<PolicySpec> policies;
  std::size_t horizon = 5000;
  std::vector<std::size_t> batch_sizes = {1, 2, 4, 8, 16, 32, 64, 128, 256};
  std::size_t replicates = 500;
  std::uint64_t seed = 1;
  std::vector<Mode> modes = {Mode::kBatched};
  std::string out_dir = "results";
  unsigned threads = 0;
  std::string baseline;      // replay: normalize conversion rates to this policy label
  std::size_t log_size = 10000;  // gen-log default event count
};

/// Parses a JSON config file. Unknown keys and malformed values raise
/// ConfigError naming the field.
ExperimentConfig load_config(const std::string& path);

/// Command line values that take precedence over the config file.
struct ConfigOverrides {
  std::optional<std::string> env;
  std::optional<std::string> policy;
  std::optional<std::size_t> horizon;
  std::optional<std::vector<std::size_t>> batch_sizes;
  std::optional<std::size_t> replicates;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::string>> modes;
  std::optional<std::string> out_dir;
  std::optional<unsigned> threads;
  std::optional<std::size_t> log_size;
};

void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides);

/// Batch-size sweep over every (env, policy) cell; writes
///   runs.csv    one row per run:
///               env,policy,mode,batch_size,replicate,seed,final_regret,total_reward
///   summary.csv one row per cell:
///               env,policy,mode,batch_size,replicates,mean_regret,std,ci95_lo,ci95_hi
/// Reruns with the same config and seed produce byte-identical files.
void cmd_simulate(const ExperimentConfig& config);

/// Sandwich-bound verification for every (env, policy, batch size); writes
///   bounds.csv  env,policy,n,b,M,reg_online,reg_batch,b_reg_short,
///               ci_online_lo,ci_online_hi,ci_batch_lo,ci_batch_hi,
///               ci_short_lo,ci_short_hi,verdict_left,verdict_right,
///               slack_left,slack_right
///   bounds.txt  the human-readable report blocks
/// Returns the reports (the CLI uses them for --strict gating).
std::vector<BoundReport> cmd_verify_bounds(const ExperimentConfig& config);

/// Replays every (policy, batch size) against the log; writes replay.csv:
///   policy,batch_size,total_events,matched,conversion_rate[,relative_cr]
/// The relative column appears when config.baseline names a policy label;
/// rows that matched nothing leave the rate fields empty.
std::vector<ReplayResult> cmd_replay(const ExperimentConfig& config, const std::string& log_path);

/// Writes a synthetic uniformly-logged dataset for the first configured
/// environment and prints a short summary (size, arms, dimension, arm
/// frequencies).
void cmd_gen_log(const ExperimentConfig& config, const std::string& log_path);

}  // namespace batchbandit
