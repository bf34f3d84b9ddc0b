#include "batchbandit/batch_grid.hpp"

#include <stdexcept>

namespace batchbandit {

BatchGrid make_grid(std::size_t requested_horizon, std::size_t batch_size) {
  if (batch_size == 0) {
    throw std::invalid_argument("make_grid: batch size must be positive");
  }
  if (requested_horizon < batch_size) {
    throw std::invalid_argument("make_grid: horizon shorter than one batch");
  }
  BatchGrid grid;
  grid.batch_size = batch_size;
  grid.batches = requested_horizon / batch_size;
  grid.horizon = grid.batches * batch_size;
  grid.boundaries.reserve(grid.batches);
  for (std::size_t j = 0; j < grid.batches; ++j) {
    grid.boundaries.push_back(j * batch_size);
  }
  return grid;
}

}  // namespace batchbandit
