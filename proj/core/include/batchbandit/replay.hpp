#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "batchbandit/environment.hpp"
#include "batchbandit/policy.hpp"

namespace batchbandit {

/// One row of a logged-interaction file.
struct LoggedEvent {
  std::size_t step = 0;
  std::size_t action = 0;
  double reward = 0.0;
  double propensity = 1.0;            // logging probability, (0, 1]
  std::vector<double> context;        // empty for non-contextual logs

  bool operator==(const LoggedEvent&) const = default;
};

/// Outcome of replaying a policy against a log. conversion_rate is the mean
/// reward over accepted events and is absent when nothing matched.
/// batch_cr records the cumulative conversion rate after each completed
/// batch of accepted events.
struct ReplayResult {
  std::size_t total_events = 0;
  std::size_t matched = 0;
  double reward_sum = 0.0;
  std::optional<double> conversion_rate;
  std::size_t batch_size = 1;
  std::vector<double> batch_cr;
};

/// Log file schema: header `step,action,reward,propensity[,x1..xd]`, one
/// event per row, UTF-8, '.' decimal point. Malformed input is reported with
/// its 1-based line number. When expected_arms is nonzero, actions must lie
/// below it.
std::vector<LoggedEvent> load_log(const std::string& path, std::size_t expected_arms = 0);

/// Writes events in the schema above. context_dim fixes the column count;
/// every event must match it.
void write_log(const std::string& path, std::span<const LoggedEvent> events,
               std::size_t context_dim);

/// Uniformly-logged synthetic interactions from env: actions are uniform
/// with propensity 1/K; linear environments also draw a standard normal
/// context per event and binary rewards from the linear model.
std::vector<LoggedEvent> generate_synthetic_log(const Environment& env, std::size_t size,
                                                std::uint64_t seed);

/// Rejection-sampling offline evaluation on a uniformly logged stream: each
/// event where the policy's realized action equals the logged action is
/// accepted and scored; accepted events are applied to the policy in batches
/// of `batch_size` (batch learning over the accepted stream). Non-uniform
/// logs are rejected, since the estimate is only unbiased under uniform
/// logging.
ReplayResult replay_evaluate(Policy& policy, std::span<const LoggedEvent> events,
                             std::size_t batch_size, std::uint64_t seed);

}  // namespace batchbandit
