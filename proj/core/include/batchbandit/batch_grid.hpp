#pragma once

#include <cstddef>
#include <vector>

namespace batchbandit {

/// Partition of the horizon into `batches` consecutive batches of equal size
/// `batch_size`. Batch j (0-based) covers step indices [j*b, (j+1)*b), so the
/// batches tile [0, horizon) with no off-by-one. horizon == batch_size *
/// batches always holds; a requested horizon that is not a multiple of b is
/// truncated down.
struct BatchGrid {
  std::size_t horizon = 0;     // n
  std::size_t batch_size = 0;  // b
  std::size_t batches = 0;     // M
  std::vector<std::size_t> boundaries;  // start index of each batch

  bool operator==(const BatchGrid&) const = default;
};

BatchGrid make_grid(std::size_t requested_horizon, std::size_t batch_size);

}  // namespace batchbandit
