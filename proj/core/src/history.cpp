#include "batchbandit/history.hpp"

#include <stdexcept>

namespace batchbandit {

void History::release(std::size_t count) {
  if (visible_ + count > entries_.size()) {
    throw std::logic_error("History::release: cannot release beyond recorded entries");
  }
  visible_ += count;
}

}  // namespace batchbandit
