#include "batchbandit/sweep.hpp"

#include <stdexcept>

#include "batchbandit/parallel.hpp"

namespace batchbandit {

namespace {
constexpr std::uint64_t kSweepTag = 0x73776565702e2e2eULL;
}

std::uint64_t sweep_run_seed(std::uint64_t master_seed, std::size_t batch_index,
                             std::size_t replicate, Mode mode) {
  return derive_seed(master_seed, {kSweepTag, batch_index, replicate, mode_code(mode)});
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.batch_sizes.empty()) {
    throw std::invalid_argument("run_sweep: no batch sizes");
  }
  if (config.modes.empty()) {
    throw std::invalid_argument("run_sweep: no modes");
  }
  if (config.replicates == 0) {
    throw std::invalid_argument("run_sweep: replicates must be positive");
  }

  const Environment env = make_environment(config.env);
  // Validate the policy spec (and the grids) once up front.
  (void)make_policy(config.policy, env.arms());
  std::vector<BatchGrid> grids;
  grids.reserve(config.batch_sizes.size());
  for (std::size_t b : config.batch_sizes) {
    grids.push_back(make_grid(config.requested_horizon, b));
  }

  const std::size_t n_modes = config.modes.size();
  const std::size_t per_batch = n_modes * config.replicates;
  const std::size_t total = config.batch_sizes.size() * per_batch;

  SweepResult result;
  result.runs.resize(total);

  parallel_for(total, config.threads, [&](std::size_t i) {
    const std::size_t batch_index = i / per_batch;
    const std::size_t mode_index = (i % per_batch) / config.replicates;
    const std::size_t replicate = i % config.replicates;
    const Mode mode = config.modes[mode_index];
    const std::uint64_t seed = sweep_run_seed(config.master_seed, batch_index, replicate, mode);

    auto policy = make_policy(config.policy, env.arms());
    RunOptions options;
    options.record_rules = false;
    const Trajectory traj = run_mode(*policy, env, grids[batch_index], mode, seed, options);

    RunRecord& rec = result.runs[i];
    rec.batch_size = config.batch_sizes[batch_index];
    rec.mode = mode;
    rec.replicate = replicate;
    rec.seed = seed;
    rec.final_regret = traj.final_regret();
    rec.total_reward = traj.total_reward;
  });

  result.cells.reserve(config.batch_sizes.size() * n_modes);
  std::vector<double> regrets(config.replicates);
  for (std::size_t bi = 0; bi < config.batch_sizes.size(); ++bi) {
    for (std::size_t mi = 0; mi < n_modes; ++mi) {
      const std::size_t base = bi * per_batch + mi * config.replicates;
      for (std::size_t r = 0; r < config.replicates; ++r) {
        regrets[r] = result.runs[base + r].final_regret;
      }
      CellSummary cell;
      cell.batch_size = config.batch_sizes[bi];
      cell.mode = config.modes[mi];
      cell.replicates = config.replicates;
      cell.regret = summarize(regrets);
      result.cells.push_back(cell);
    }
  }
  return result;
}

}  // namespace batchbandit
