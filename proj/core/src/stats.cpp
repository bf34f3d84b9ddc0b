#include "batchbandit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace batchbandit {

Summary summarize(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("summarize: empty sample");
  }
  // Accumulate over a sorted copy so the estimates are bit-identical under
  // any permutation of the sample (replicate order must not matter).
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  Summary s;
  s.count = sorted.size();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : sorted) {
      const double d = v - s.mean;
      ss += d * d;
    }
    s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    s.se = s.sd / std::sqrt(static_cast<double>(s.count));
  }
  s.ci_lo = s.mean - kZ95 * s.se;
  s.ci_hi = s.mean + kZ95 * s.se;
  return s;
}

PairedDiff paired_diff(std::span<const double> lhs, std::span<const double> rhs) {
  if (lhs.size() != rhs.size() || lhs.empty()) {
    throw std::invalid_argument("paired_diff: samples must be nonempty and equally sized");
  }
  std::vector<double> diffs(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    diffs[i] = lhs[i] - rhs[i];
  }
  const Summary s = summarize(diffs);
  return PairedDiff{s.mean, s.se};
}

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      ranks[order[k]] = rank;
    }
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman: need two equally sized samples of length >= 2");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0) {
    return 0.0;
  }
  return cov / std::sqrt(var_x * var_y);
}

}  // namespace batchbandit
