#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cbtpq/common.hpp"

namespace cbtpq {

// Surface shared by all four tournaments: positional key access over
// slot_count() slots (not all of which need be active), winner peeking,
// priority updates, and an instrumented comparison counter.
template <class Q>
concept MinQueue = requires(Q& q, const Q& cq, std::size_t i, priority_t p) {
  { cq.size() } -> std::convertible_to<std::size_t>;
  { cq.slot_count() } -> std::same_as<std::size_t>;
  { cq.active_count() } -> std::same_as<std::size_t>;
  { cq.peek_min() } -> std::same_as<Winner>;
  { cq.priority_at(i) } -> std::same_as<priority_t>;
  { cq.id_at(i) } -> std::same_as<event_id_t>;
  { cq.is_active_slot(i) } -> std::same_as<bool>;
  { cq.comparison_count() } -> std::same_as<std::uint64_t>;
  q.update_key(i, p);
  q.reset_comparison_count();
};

// Structures that release storage on removal (SuperCBT, Marin_VS).
template <class Q>
concept PhysicallyShrinks = requires(Q& q, std::size_t i) {
  { q.remove(i) } -> std::same_as<event_id_t>;
};

// Structures that accept new keys after construction (SuperCBT).
template <class Q>
concept Grows = requires(Q& q, const Q& cq, priority_t p, event_id_t id) {
  q.insert(p, id);
  { cq.capacity() } -> std::same_as<std::size_t>;
};

// Fixed-size structures that dismiss by sentinel substitution.
template <class Q>
concept SentinelDismisses = requires(Q& q) {
  { q.delete_min_sentinel() } -> std::same_as<event_id_t>;
};

// Dismisses the current winner through whichever discipline the structure
// supports: physical shrink where available, sentinel parking otherwise.
template <MinQueue Q>
event_id_t dismiss_min(Q& q) {
  if constexpr (PhysicallyShrinks<Q>) {
    return q.remove(q.peek_min().index);
  } else {
    static_assert(SentinelDismisses<Q>,
                  "structure supports neither shrink nor sentinel dismissal");
    return q.delete_min_sentinel();
  }
}

// Brute-force ground truth for the differential harness: a flat sequence
// of (priority, id) entries, min found by linear scan with the same
// strict-< challenger rule the tournaments use. Removed entries are
// swap-erased so scan cost tracks the live size; order is irrelevant to a
// full scan.
class OracleQueue {
 public:
  OracleQueue() = default;

  void insert(priority_t priority, event_id_t id) {
    entries_.push_back(Entry{priority, id});
  }

  void update_by_id(event_id_t id, priority_t priority) {
    entries_[find(id)].priority = priority;
  }

  void remove_by_id(event_id_t id) {
    const std::size_t k = find(id);
    entries_[k] = entries_.back();
    entries_.pop_back();
  }

  priority_t min_priority() const {
    if (entries_.empty()) throw std::logic_error("OracleQueue: empty");
    priority_t best = entries_.front().priority;
    for (const Entry& e : entries_)
      if (e.priority < best) best = e.priority;
    return best;
  }

  std::size_t active_count() const { return entries_.size(); }

 private:
  struct Entry {
    priority_t priority;
    event_id_t id;
  };

  std::size_t find(event_id_t id) const {
    for (std::size_t k = 0; k < entries_.size(); ++k)
      if (entries_[k].id == id) return k;
    throw std::logic_error("OracleQueue: no entry with that id");
  }

  std::vector<Entry> entries_;
};

}  // namespace cbtpq
