#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cbtpq/common.hpp"

namespace cbtpq {

// Classic tournament with a dedicated leaf level: 2N node slots, where
// leaves N..2N-1 permanently register their own key index and the winners
// bubble into nodes N-1..1. Fixed size; dismissal parks a key at the
// sentinel priority. This is the reference structure the benchmark
// harness scales everything else against.
class MarinTournament {
 public:
  explicit MarinTournament(std::vector<priority_t> priorities)
      : MarinTournament(std::move(priorities), {}) {}

  MarinTournament(std::vector<priority_t> priorities,
                  std::vector<event_id_t> ids) {
    const std::size_t n = priorities.size();
    if (n == 0) throw std::invalid_argument("MarinTournament: empty key set");
    if (n > max_key_count)
      throw std::invalid_argument("MarinTournament: too many keys");
    if (!ids.empty() && ids.size() != n)
      throw std::invalid_argument("MarinTournament: ids/priorities mismatch");
    for (priority_t p : priorities)
      if (!usable_priority(p))
        throw std::invalid_argument(
            "MarinTournament: priority at or above sentinel");

    keys_ = std::move(priorities);
    if (ids.empty()) {
      ids_.resize(n);
      std::iota(ids_.begin(), ids_.end(), event_id_t{0});
    } else {
      ids_ = std::move(ids);
    }
    n_keys_ = n;
    active_ = n;
    nodes_.assign(2 * n_keys_, 0);
    build();
  }

  void update_key(std::size_t i, priority_t p) {
    if (i >= n_keys_)
      throw std::out_of_range("MarinTournament: key index out of range");
    if (!usable_priority(p))
      throw std::invalid_argument(
          "MarinTournament: priority at or above sentinel");
    if (keys_[i] == sentinel_priority) ++active_;  // revive a dismissed slot
    keys_[i] = p;
    update(i);
  }

  Winner peek_min() const {
    if (active_ == 0)
      throw std::logic_error("MarinTournament: queue exhausted");
    const std::size_t w = nodes_[1];
    return Winner{w, keys_[w]};
  }

  event_id_t delete_min_sentinel() {
    if (active_ == 0)
      throw std::logic_error("MarinTournament: queue exhausted");
    const std::size_t w = nodes_[1];
    const event_id_t id = ids_[w];
    keys_[w] = sentinel_priority;
    --active_;
    update(w);
    return id;
  }

  std::size_t size() const { return n_keys_; }
  std::size_t slot_count() const { return n_keys_; }
  std::size_t active_count() const { return active_; }

  bool is_active_slot(std::size_t i) const {
    return i < n_keys_ && keys_[i] < sentinel_priority;
  }

  priority_t priority_at(std::size_t i) const {
    if (i >= n_keys_)
      throw std::out_of_range("MarinTournament: key index out of range");
    return keys_[i];
  }

  event_id_t id_at(std::size_t i) const {
    if (i >= n_keys_)
      throw std::out_of_range("MarinTournament: key index out of range");
    return ids_[i];
  }

  std::span<const slot_t> node_slots() const { return nodes_; }
  std::span<const priority_t> priorities() const { return keys_; }
  std::span<const event_id_t> event_ids() const { return ids_; }

  std::size_t auxiliary_slots() const { return nodes_.size(); }

  std::uint64_t comparison_count() const { return comparisons_; }
  void reset_comparison_count() { comparisons_ = 0; }

 private:
  // Replays key i from its leaf i+N to the root: floor(log2(i+N))
  // comparisons, value-independent.
  void update(std::size_t i) {
    std::size_t idx = i;
    std::size_t node = i + n_keys_;
    while (node > 1) {
      const std::size_t s = nodes_[node ^ 1u];
      ++comparisons_;
      if (keys_[s] < keys_[idx]) idx = s;
      node >>= 1;
      nodes_[node] = static_cast<slot_t>(idx);
    }
  }

  void build() {
    for (std::size_t i = 0; i < n_keys_; ++i)
      nodes_[n_keys_ + i] = static_cast<slot_t>(i);
    for (std::size_t p = n_keys_ - 1; p >= 1; --p) {
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

// Variable-size variant of the classic tournament. A host map gives each
// key the leaf (or raised node) it currently plugs into, which lets the
// tree release its two highest leaves on every removal: the winner of the
// last leaf pair is re-hosted at the pair's parent node and the loser's
// value relocates into the removed key's slot. Key slots are addressed by
// their original index and do not stay dense; inactive slots are
// recognizable by their stale host entries.
class MarinVsTournament {
 public:
  explicit MarinVsTournament(std::vector<priority_t> priorities)
      : MarinVsTournament(std::move(priorities), {}) {}

  MarinVsTournament(std::vector<priority_t> priorities,
                    std::vector<event_id_t> ids) {
    const std::size_t n = priorities.size();
    if (n == 0)
      throw std::invalid_argument("MarinVsTournament: empty key set");
    if (n > max_key_count)
      throw std::invalid_argument("MarinVsTournament: too many keys");
    if (!ids.empty() && ids.size() != n)
      throw std::invalid_argument("MarinVsTournament: ids/priorities mismatch");
    for (priority_t p : priorities)
      if (!usable_priority(p))
        throw std::invalid_argument(
            "MarinVsTournament: priority at or above sentinel");

    keys_ = std::move(priorities);
    if (ids.empty()) {
      ids_.resize(n);
      std::iota(ids_.begin(), ids_.end(), event_id_t{0});
    } else {
      ids_ = std::move(ids);
    }
    n_keys_ = n;
    active_ = n;
    last_leaf_ = 2 * n_keys_ - 1;
    nodes_.assign(2 * n_keys_, 0);
    host_leaf_.resize(n_keys_);
    for (std::size_t i = 0; i < n_keys_; ++i) {
      host_leaf_[i] = static_cast<slot_t>(n_keys_ + i);
      nodes_[n_keys_ + i] = static_cast<slot_t>(i);
    }
    for (std::size_t p = n_keys_ - 1; p >= 1; --p) {
      const std::size_t l = nodes_[2 * p];
      const std::size_t r = nodes_[2 * p + 1];
      std::size_t w = l;
      ++comparisons_;
      if (keys_[r] < keys_[l]) w = r;
      nodes_[p] = static_cast<slot_t>(w);
    }
  }

  void update_key(std::size_t i, priority_t p) {
    if (!is_active_slot(i))
      throw std::out_of_range("MarinVsTournament: inactive key slot");
    if (!usable_priority(p))
      throw std::invalid_argument(
          "MarinVsTournament: priority at or above sentinel");
    keys_[i] = p;
    update(i);
  }

  Winner peek_min() const {
    if (active_ == 0)
      throw std::logic_error("MarinVsTournament: queue exhausted");
    const std::size_t w = nodes_[1];
    return Winner{w, keys_[w]};
  }

  // Removes the key at slot i and releases the tree's last leaf pair.
  // The pair's winner is re-hosted at the pair's parent node; unless the
  // loser is the removed key itself, its value moves into the removed
  // key's slot (which may be the raised winner's slot, when the winner is
  // what's being removed). The freed slot is always the loser's.
  event_id_t remove(std::size_t i) {
    if (!is_active_slot(i))
      throw std::out_of_range("MarinVsTournament: inactive key slot");
    const event_id_t removed = ids_[i];
    if (active_ == 1) {
      active_ = 0;
      last_leaf_ = 0;
      return removed;
    }
    const std::size_t pair_parent = last_leaf_ >> 1;
    const std::size_t winner = nodes_[pair_parent];
    const std::size_t loser = nodes_[last_leaf_] == winner
                                  ? nodes_[last_leaf_ - 1]
                                  : nodes_[last_leaf_];
    host_leaf_[winner] = static_cast<slot_t>(pair_parent);
    if (loser != i) {
      keys_[i] = keys_[loser];
      ids_[i] = ids_[loser];
    }
    last_leaf_ -= 2;
    --active_;
    update(loser != i ? i : winner);
    return removed;
  }

  std::size_t size() const { return active_; }
  std::size_t slot_count() const { return n_keys_; }
  std::size_t active_count() const { return active_; }
  std::size_t key_slots() const { return n_keys_; }

  // A slot is active while its host entry still points into the live leaf
  // range and that node registers it back. Freed slots keep a host entry
  // pointing at a retired leaf, which can never satisfy this again.
  bool is_active_slot(std::size_t i) const {
    return i < n_keys_ && host_leaf_[i] <= last_leaf_ &&
           nodes_[host_leaf_[i]] == i;
  }

  priority_t priority_at(std::size_t i) const {
    if (i >= n_keys_)
      throw std::out_of_range("MarinVsTournament: key index out of range");
    return keys_[i];
  }

  event_id_t id_at(std::size_t i) const {
    if (i >= n_keys_)
      throw std::out_of_range("MarinVsTournament: key index out of range");
    return ids_[i];
  }

  std::size_t host_of(std::size_t i) const {
    if (i >= n_keys_)
      throw std::out_of_range("MarinVsTournament: key index out of range");
    return host_leaf_[i];
  }

  std::size_t last_leaf() const { return last_leaf_; }

  std::span<const slot_t> node_slots() const { return nodes_; }
  std::span<const priority_t> priorities() const { return keys_; }
  std::span<const event_id_t> event_ids() const { return ids_; }

  std::size_t auxiliary_slots() const {
    return nodes_.size() + host_leaf_.size();
  }

  std::uint64_t comparison_count() const { return comparisons_; }
  void reset_comparison_count() { comparisons_ = 0; }

 private:
  // Same climb as the fixed variant, but starting from the key's current
  // host node. Raised keys start higher and spend fewer comparisons.
  void update(std::size_t i) {
    std::size_t idx = i;
    std::size_t node = host_leaf_[i];
    while (node > 1) {
      const std::size_t s = nodes_[node ^ 1u];
      ++comparisons_;
      if (keys_[s] < keys_[idx]) idx = s;
      node >>= 1;
      nodes_[node] = static_cast<slot_t>(idx);
    }
  }

  std::size_t n_keys_ = 0;
  std::size_t active_ = 0;
  std::size_t last_leaf_ = 0;
  std::vector<slot_t> nodes_;
  std::vector<slot_t> host_leaf_;
  std::vector<priority_t> keys_;
  std::vector<event_id_t> ids_;
  std::uint64_t comparisons_ = 0;
};

}  // namespace cbtpq
