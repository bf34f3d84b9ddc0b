// Command line front end: simulate | verify-bounds | replay | gen-log.
// Exit codes: 0 success, 1 configuration error, 2 runtime error,
// 3 bound violation detected (verify-bounds with --strict).

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "batchbandit/experiments.hpp"

namespace {

using batchbandit::ConfigError;
using batchbandit::ConfigOverrides;
using batchbandit::ExperimentConfig;

struct CommonArgs {
  std::string config_path;
  ConfigOverrides overrides;
  std::vector<std::size_t> batch_sizes;
  std::vector<std::string> modes;
  std::string env;
  std::string policy;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t horizon = 0;
  std::size_t replicates = 0;
  unsigned threads = 0;
  std::size_t log_size = 0;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON experiment configuration file");
  cmd->add_option("--seed", args.seed, "master seed")->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", args.out, "output directory (or file for gen-log)");
  cmd->add_option("--env", args.env, "environment preset (env1..env6, linear_demo)");
  cmd->add_option("--policy", args.policy, "policy kind (ts, ucb1, egreedy, uniform, fixed, lints, linucb)");
  cmd->add_option("--batch-sizes", args.batch_sizes, "batch sizes")->delimiter(',');
  cmd->add_option("--horizon", args.horizon, "requested horizon");
  cmd->add_option("--replicates", args.replicates, "replicates per cell");
  cmd->add_option("--modes", args.modes, "modes to run (online, batched, short)")->delimiter(',');
  cmd->add_option("--threads", args.threads, "worker threads (0 = all cores)");
}

ExperimentConfig build_config(const CLI::App* cmd, CommonArgs& args) {
  ExperimentConfig config;
  if (!args.config_path.empty()) {
    config = batchbandit::load_config(args.config_path);
  }
  ConfigOverrides& o = args.overrides;
  if (cmd->count("--env")) o.env = args.env;
  if (cmd->count("--policy")) o.policy = args.policy;
  if (cmd->count("--horizon")) o.horizon = args.horizon;
  if (cmd->count("--batch-sizes")) o.batch_sizes = args.batch_sizes;
  if (cmd->count("--replicates")) o.replicates = args.replicates;
  if (cmd->count("--seed")) o.seed = args.seed;
  if (cmd->count("--modes")) o.modes = args.modes;
  if (cmd->count("--out")) o.out_dir = args.out;
  if (cmd->count("--threads")) o.threads = args.threads;
  batchbandit::apply_overrides(config, o);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batched bandit simulation and offline evaluation toolkit"};
  app.require_subcommand(1);

  CommonArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "batch-size sweep with CSV summaries");
  add_common_options(sim, sim_args);

  CommonArgs bounds_args;
  bool strict = false;
  CLI::App* bounds = app.add_subcommand(
      "verify-bounds", "check online < batched <= b * short regret ordering");
  add_common_options(bounds, bounds_args);
  bounds->add_flag("--strict", strict, "exit with code 3 when a bound is violated");

  CommonArgs replay_args;
  std::string replay_log;
  CLI::App* replay = app.add_subcommand("replay", "offline replay evaluation on a logged dataset");
  add_common_options(replay, replay_args);
  replay->add_option("--log", replay_log, "logged dataset CSV")->required();
  std::string baseline;
  replay->add_option("--baseline", baseline, "policy label to normalize conversion rates against");

  CommonArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-log", "generate a synthetic uniformly-logged dataset");
  add_common_options(gen, gen_args);
  gen->add_option("--size", gen_args.log_size, "number of events");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) {
      batchbandit::cmd_simulate(build_config(sim, sim_args));
      return 0;
    }
    if (bounds->parsed()) {
      const auto reports = batchbandit::cmd_verify_bounds(build_config(bounds, bounds_args));
      if (strict) {
        for (const auto& report : reports) {
          if (!report.acceptable()) {
            std::cerr << "verify-bounds: violation detected (" << report.env_name << ", "
                      << report.policy_label << ", b=" << report.batch_size << ")\n";
            return 3;
          }
        }
      }
      return 0;
    }
    if (replay->parsed()) {
      ExperimentConfig config = build_config(replay, replay_args);
      if (replay->count("--baseline")) {
        config.baseline = baseline;
      }
      batchbandit::cmd_replay(config, replay_log);
      return 0;
    }
    if (gen->parsed()) {
      ExperimentConfig config = build_config(gen, gen_args);
      if (gen->count("--size")) {
        config.log_size = gen_args.log_size;
      }
      const std::string path = gen->count("--out") ? gen_args.out : "synthetic_log.csv";
      batchbandit::cmd_gen_log(config, path);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
