#pragma once

#include <cstddef>
#include <span>

namespace batchbandit {

inline constexpr double kZ95 = 1.959963984540054;

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;    // sample standard deviation (n - 1)
  double se = 0.0;
  double ci_lo = 0.0;  // normal 95% interval around the mean
  double ci_hi = 0.0;
};

Summary summarize(std::span<const double> values);

struct PairedDiff {
  double mean = 0.0;
  double se = 0.0;
};

/// Mean and standard error of lhs[i] - rhs[i].
PairedDiff paired_diff(std::span<const double> lhs, std::span<const double> rhs);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace batchbandit
