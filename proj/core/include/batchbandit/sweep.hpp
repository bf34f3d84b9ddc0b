#pragma once

#include <cstdint>
#include <vector>

#include "batchbandit/environment.hpp"
#include "batchbandit/policy.hpp"
#include "batchbandit/runner.hpp"
#include "batchbandit/stats.hpp"

namespace batchbandit {

/// One (environment, policy) cell of an experiment: every requested batch
/// size times every mode times `replicates` independent runs.
struct SweepConfig {
  EnvSpec env;
  PolicySpec policy;
  std::size_t requested_horizon = 5000;
  std::vector<std::size_t> batch_sizes;
  std::size_t replicates = 500;
  std::uint64_t master_seed = 1;
  std::vector<Mode> modes = {Mode::kBatched};
  unsigned threads = 0;
};

struct RunRecord {
  std::size_t batch_size = 0;
  Mode mode = Mode::kOnline;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  double final_regret = 0.0;
  double total_reward = 0.0;
};

struct CellSummary {
  std::size_t batch_size = 0;
  Mode mode = Mode::kOnline;
  std::size_t replicates = 0;
  Summary regret;
};

struct SweepResult {
  std::vector<RunRecord> runs;      // ordered by (batch index, mode index, replicate)
  std::vector<CellSummary> cells;   // same ordering, one row per (batch size, mode)
};

/// Seed of a single sweep run, derived from the master seed and the run's
/// coordinates so that results are reproducible one run at a time.
std::uint64_t sweep_run_seed(std::uint64_t master_seed, std::size_t batch_index,
                             std::size_t replicate, Mode mode);

/// Runs the whole cell, possibly across worker threads. Scheduling cannot
/// change the result: each run writes its own slot and aggregation follows
/// the fixed record order.
SweepResult run_sweep(const SweepConfig& config);

}  // namespace batchbandit
