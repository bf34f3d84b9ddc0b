#include "batchbandit/replay.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "batchbandit/csv.hpp"
#include "batchbandit/decision_rule.hpp"

namespace batchbandit {

namespace {

constexpr std::uint64_t kReplayTag = 0x7265706c61792e2eULL;
constexpr std::uint64_t kGenLogTag = 0x67656e6c6f672e2eULL;
constexpr double kPropensityTol = 1e-9;

[[noreturn]] void parse_error(std::size_t line, const std::string& message) {
  throw std::runtime_error("log parse error at line " + std::to_string(line) + ": " + message);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& text, std::size_t line, const char* what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    parse_error(line, std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

std::size_t parse_index(const std::string& text, std::size_t line, const char* what) {
  std::size_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    parse_error(line, std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<LoggedEvent> load_log(const std::string& path, std::size_t expected_arms) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open log file '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("log file '" + path + "' is empty");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }

  const auto header = split_fields(line);
  if (header.size() < 4 || header[0] != "step" || header[1] != "action" ||
      header[2] != "reward" || header[3] != "propensity") {
    parse_error(1, "header must start with 'step,action,reward,propensity'");
  }
  const std::size_t dim = header.size() - 4;
  for (std::size_t i = 0; i < dim; ++i) {
    if (header[4 + i] != "x" + std::to_string(i + 1)) {
      parse_error(1, "context columns must be named x1..xd");
    }
  }

  std::vector<LoggedEvent> events;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 4 + dim) {
      parse_error(line_no, "expected " + std::to_string(4 + dim) + " fields, got " +
                               std::to_string(fields.size()));
    }
    LoggedEvent event;
    event.step = parse_index(fields[0], line_no, "step");
    event.action = parse_index(fields[1], line_no, "action");
    if (expected_arms != 0 && event.action >= expected_arms) {
      parse_error(line_no, "action " + std::to_string(event.action) + " out of range (K=" +
                               std::to_string(expected_arms) + ")");
    }
    event.reward = parse_double(fields[2], line_no, "reward");
    event.propensity = parse_double(fields[3], line_no, "propensity");
    if (!(event.propensity > 0.0 && event.propensity <= 1.0)) {
      parse_error(line_no, "propensity must lie in (0, 1]");
    }
    event.context.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      event.context.push_back(parse_double(fields[4 + i], line_no, "context value"));
    }
    events.push_back(std::move(event));
  }
  if (events.empty()) {
    throw std::runtime_error("log file '" + path + "' contains no events");
  }
  return events;
}

void write_log(const std::string& path, std::span<const LoggedEvent> events,
               std::size_t context_dim) {
  CsvBuilder csv;
  csv.field("step").field("action").field("reward").field("propensity");
  for (std::size_t i = 0; i < context_dim; ++i) {
    csv.field("x" + std::to_string(i + 1));
  }
  csv.end_row();
  for (const LoggedEvent& event : events) {
    if (event.context.size() != context_dim) {
      throw std::invalid_argument("write_log: event context dimension mismatch");
    }
    csv.field(event.step).field(event.action).field(event.reward).field(event.propensity);
    for (double x : event.context) {
      csv.field(x);
    }
    csv.end_row();
  }
  write_file_atomic(path, csv.str());
}

std::vector<LoggedEvent> generate_synthetic_log(const Environment& env, std::size_t size,
                                                std::uint64_t seed) {
  if (size == 0) {
    throw std::invalid_argument("generate_synthetic_log: size must be positive");
  }
  Rng rng(derive_seed(seed, {kGenLogTag}));
  const bool contextual = env.family() == RewardFamily::kLinear;
  const double propensity = 1.0 / static_cast<double>(env.arms());

  std::vector<LoggedEvent> events;
  events.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    LoggedEvent event;
    event.step = i;
    event.propensity = propensity;
    if (contextual) {
      event.context = env.sample_context(rng);
    }
    event.action = rng.uniform_index(env.arms());
    event.reward = contextual ? env.sample_reward_in_context(event.action, event.context, rng)
                              : env.sample(event.action, rng);
    events.push_back(std::move(event));
  }
  return events;
}

ReplayResult replay_evaluate(Policy& policy, std::span<const LoggedEvent> events,
                             std::size_t batch_size, std::uint64_t seed) {
  if (batch_size == 0) {
    throw std::invalid_argument("replay_evaluate: batch size must be positive");
  }
  if (events.empty()) {
    throw std::invalid_argument("replay_evaluate: empty log");
  }
  const double uniform = 1.0 / static_cast<double>(policy.arms());
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].action >= policy.arms()) {
      throw std::invalid_argument("replay_evaluate: logged action out of range at event " +
                                  std::to_string(i));
    }
    if (std::abs(events[i].propensity - uniform) > kPropensityTol) {
      throw std::invalid_argument(
          "replay_evaluate: log is not uniformly randomized (propensity != 1/K); "
          "the replay estimate would be biased");
    }
  }

  Rng rng(derive_seed(seed, {kReplayTag}));
  ReplayResult result;
  result.total_events = events.size();
  result.batch_size = batch_size;

  std::vector<const LoggedEvent*> pending;
  pending.reserve(batch_size);
  for (const LoggedEvent& event : events) {
    const DecisionRule rule = policy.decide(rng, event.context);
    const std::size_t action = sample_action(rule, rng);
    if (action != event.action) {
      continue;
    }
    ++result.matched;
    result.reward_sum += event.reward;
    pending.push_back(&event);
    if (pending.size() == batch_size) {
      for (const LoggedEvent* e : pending) {
        policy.update(e->action, e->reward, e->context);
      }
      pending.clear();
      result.batch_cr.push_back(result.reward_sum / static_cast<double>(result.matched));
    }
  }
  if (result.matched > 0) {
    result.conversion_rate = result.reward_sum / static_cast<double>(result.matched);
  }
  return result;
}

}  // namespace batchbandit
