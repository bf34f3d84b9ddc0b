#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace batchbandit {

struct HistoryEntry {
  std::size_t action = 0;
  double reward = 0.0;

  bool operator==(const HistoryEntry&) const = default;
};

/// Ordered action-reward pairs with a visibility cutoff: entries past
/// visible_len() have happened but have not been released to the policy yet.
/// Under a batch grid the cutoff only ever advances in multiples of the
/// batch size.
class History {
 public:
  void append(std::size_t action, double reward) { entries_.push_back({action, reward}); }

  /// Releases `count` more entries to the policy.
  void release(std::size_t count);

  std::size_t size() const { return entries_.size(); }
  std::size_t visible_len() const { return visible_; }

  std::span<const HistoryEntry> entries() const { return entries_; }
  std::span<const HistoryEntry> visible() const {
    return std::span<const HistoryEntry>(entries_).first(visible_);
  }
  /// Entries recorded but not yet released.
  std::span<const HistoryEntry> pending() const {
    return std::span<const HistoryEntry>(entries_).subspan(visible_);
  }

 private:
  std::vector<HistoryEntry> entries_;
  std::size_t visible_ = 0;
};

}  // namespace batchbandit
