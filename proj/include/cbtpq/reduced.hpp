#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cbtpq/common.hpp"

namespace cbtpq {

// Fixed-size min tournament that spends one node slot per key instead of
// two. The key array itself acts as the leaf level: keys pair up as
// (0,1), (2,3), ... and the winner of pair (i, i^1) is registered at node
// (i+N)/2. Above that level the usual XOR/shift navigation applies, so the
// whole structure is the key array plus N node slots (slot 0 unused).
//
// N must be even for the pairing to close; odd inputs are padded with one
// joker key parked at sentinel_priority. Keys never move: a dismissed key
// is overwritten with the sentinel and replayed up its own path.
class ReducedTournament {
 public:
  explicit ReducedTournament(std::vector<priority_t> priorities)
      : ReducedTournament(std::move(priorities), {}) {}

  ReducedTournament(std::vector<priority_t> priorities,
                    std::vector<event_id_t> ids) {
    const std::size_t n = priorities.size();
    if (n == 0)
      throw std::invalid_argument("ReducedTournament: empty key set");
    if (n > max_key_count)
      throw std::invalid_argument("ReducedTournament: too many keys");
    if (!ids.empty() && ids.size() != n)
      throw std::invalid_argument("ReducedTournament: ids/priorities mismatch");
    for (priority_t p : priorities)
      if (!usable_priority(p))
        throw std::invalid_argument(
            "ReducedTournament: priority at or above sentinel");

    keys_ = std::move(priorities);
    if (ids.empty()) {
      ids_.resize(n);
      std::iota(ids_.begin(), ids_.end(), event_id_t{0});
    } else {
      ids_ = std::move(ids);
    }
    active_ = n;
    if (n % 2 != 0) {
      keys_.push_back(sentinel_priority);
      ids_.push_back(joker_event_id);
    }
    n_keys_ = keys_.size();
    nodes_.assign(n_keys_, 0);
    build();
  }

  // Sister of key i in the local pairing. Valid only under an even key
  // count; with odd N the pairing does not close (see the tests for the
  // signed counterexample).
  static std::size_t local_sister(std::size_t i) { return i ^ 1u; }

  // First node on key i's update path.
  static std::size_t local_parent(std::size_t i, std::size_t n_keys) {
    return (i + n_keys) / 2;
  }

  void update_key(std::size_t i, priority_t p) {
    if (i >= n_keys_)
      throw std::out_of_range("ReducedTournament: key index out of range");
    if (!usable_priority(p))
      throw std::invalid_argument(
          "ReducedTournament: priority at or above sentinel");
    if (keys_[i] == sentinel_priority) ++active_;  // revive a dismissed slot
    keys_[i] = p;
    update(i);
  }

  Winner peek_min() const {
    if (active_ == 0)
      throw std::logic_error("ReducedTournament: queue exhausted");
    const std::size_t w = nodes_[1];
    return Winner{w, keys_[w]};
  }

  // Dismisses the winner by parking it at the sentinel; the slot stays
  // physically in place. Returns the dismissed key's id.
  event_id_t delete_min_sentinel() {
    if (active_ == 0)
      throw std::logic_error("ReducedTournament: queue exhausted");
    const std::size_t w = nodes_[1];
    const event_id_t id = ids_[w];
    keys_[w] = sentinel_priority;
    --active_;
    update(w);
    return id;
  }

  // Key-slot count including any joker padding; fixed for the lifetime.
  std::size_t size() const { return n_keys_; }
  std::size_t slot_count() const { return n_keys_; }
  std::size_t active_count() const { return active_; }

  bool is_active_slot(std::size_t i) const {
    return i < n_keys_ && keys_[i] < sentinel_priority;
  }

  priority_t priority_at(std::size_t i) const {
    if (i >= n_keys_)
      throw std::out_of_range("ReducedTournament: key index out of range");
    return keys_[i];
  }

  event_id_t id_at(std::size_t i) const {
    if (i >= n_keys_)
      throw std::out_of_range("ReducedTournament: key index out of range");
    return ids_[i];
  }

  std::span<const slot_t> node_slots() const { return nodes_; }
  std::span<const priority_t> priorities() const { return keys_; }
  std::span<const event_id_t> event_ids() const { return ids_; }

  // Node slots owned by the structure beyond the key array itself.
  std::size_t auxiliary_slots() const { return nodes_.size(); }

  std::uint64_t comparison_count() const { return comparisons_; }
  void reset_comparison_count() { comparisons_ = 0; }

 private:
  // Replays key i up its path: winner of the pair goes to node (i+N)/2,
  // then each climb compares against the key registered at the sibling
  // node. Exactly floor(log2(i+N)) comparisons, independent of values.
  void update(std::size_t i) {
    std::size_t s = i ^ 1u;
    std::size_t p = (i + n_keys_) / 2;
    for (;;) {
      ++comparisons_;
      if (keys_[s] < keys_[i]) i = s;
      nodes_[p] = static_cast<slot_t>(i);
      if (p == 1) break;
      s = nodes_[p ^ 1u];
      p >>= 1;
    }
  }

  void build() {
    for (std::size_t i = 0; i < n_keys_; i += 2) {
      std::size_t w = i;
      ++comparisons_;
      if (keys_[i + 1] < keys_[i]) w = i + 1;
      nodes_[(i + n_keys_) / 2] = static_cast<slot_t>(w);
    }
    for (std::size_t p = n_keys_ / 2; p-- > 1;) {
      const std::size_t l = nodes_[2 * p];
      const std::size_t r = nodes_[2 * p + 1];
      std::size_t w = l;
      ++comparisons_;
      if (keys_[r] < keys_[l]) w = r;
      nodes_[p] = static_cast<slot_t>(w);
    }
  }

  std::size_t n_keys_ = 0;
  std::size_t active_ = 0;
  std::vector<slot_t> nodes_;
  std::vector<priority_t> keys_;
  std::vector<event_id_t> ids_;
  std::uint64_t comparisons_ = 0;
};

}  // namespace cbtpq
