#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cbtpq/bitnav.hpp"
#include "cbtpq/common.hpp"

namespace cbtpq {

// Guard flavor for the shifted-sister bound in find_parent_and_sister.
// Under `strict`, a shifted sister is declared absent only when it lands
// strictly beyond max_index; a sister landing exactly on max_index is a
// real key and keeps its pairing. The inclusive variant is retained for
// the tests, which demonstrate that it breaks pairing symmetry (first at
// max_index 11, where key 5 and key 11 disagree about being paired).
enum class SisterGuard { strict, inclusive };

// Where key i plugs into the tree when max_index is the highest active
// key index. `parent` is the node that receives the winner of i's first
// comparison; `sister` is the key it is compared against, and equals i
// itself when the key is currently sisterless.
struct LeafLink {
  std::size_t parent;
  std::size_t sister;
};

// Right keys (i > max_index/2) plug in at node i and pair with the left
// key found by shifting away the trailing zero run plus one bit. Left
// keys shift 2i+1 up until it lands inside the populated node range; the
// landing node doubles as the sister key's index. A left key whose raw
// parent 2i+1 already exceeds max_index (only i == max_index/2 when
// max_index is even) is sisterless and passes through node max_index+1.
inline LeafLink find_parent_and_sister(std::size_t i, std::size_t max_index,
                                       SisterGuard guard = SisterGuard::strict) {
  if (i > max_index)
    throw std::out_of_range("find_parent_and_sister: index beyond max_index");
  if (i > max_index / 2) return LeafLink{i, i >> lssb_position(i)};
  std::size_t parent = 2 * i + 1;
  if (parent > max_index) return LeafLink{parent, i};
  parent <<= mssb_position(max_index / parent) - 1;
  std::size_t sister = parent;
  const bool absent = guard == SisterGuard::strict ? sister > max_index
                                                   : sister >= max_index;
  if (absent) sister = i;
  return LeafLink{parent, sister};
}

// Min tournament over a complete binary tree whose leaf count equals the
// key count at every moment. Keys occupy slots 0..size()-1; right keys
// sit directly on node positions, so one array of capacity+2 node slots
// carries the whole hierarchy (the +2 covers the pass-through node
// max_index+1 and its never-read sibling). Grows by one key at a time and
// shrinks physically: removal swaps the departing value out to the
// receding tail, which is what makes shrink-to-sort work in place.
class SuperTournament {
 public:
  explicit SuperTournament(std::vector<priority_t> priorities,
                           std::size_t capacity = 0,
                           SisterGuard guard = SisterGuard::strict)
      : SuperTournament(std::move(priorities), {}, capacity, guard) {}

  SuperTournament(std::vector<priority_t> priorities,
                  std::vector<event_id_t> ids, std::size_t capacity = 0,
                  SisterGuard guard = SisterGuard::strict)
      : guard_(guard) {
    const std::size_t n = priorities.size();
    if (n == 0) throw std::invalid_argument("SuperTournament: empty key set");
    if (!ids.empty() && ids.size() != n)
      throw std::invalid_argument("SuperTournament: ids/priorities mismatch");
    capacity_ = capacity == 0 ? n : capacity;
    if (capacity_ < n)
      throw std::invalid_argument("SuperTournament: capacity below key count");
    if (capacity_ > max_key_count)
      throw std::invalid_argument("SuperTournament: capacity too large");
    for (priority_t p : priorities)
      if (!usable_priority(p))
        throw std::invalid_argument(
            "SuperTournament: priority at or above sentinel");

    keys_ = std::move(priorities);
    keys_.resize(capacity_, sentinel_priority);
    if (ids.empty()) {
      ids_.resize(capacity_);
      std::iota(ids_.begin(), ids_.begin() + static_cast<std::ptrdiff_t>(n),
                event_id_t{0});
    } else {
      ids_ = std::move(ids);
      ids_.resize(capacity_, joker_event_id);
    }
    nodes_.assign(capacity_ + 2, 0);
    active_ = n;
    build();
  }

  void update_key(std::size_t i, priority_t p) {
    if (i >= active_)
      throw std::out_of_range("SuperTournament: key index out of range");
    if (!usable_priority(p))
      throw std::invalid_argument(
          "SuperTournament: priority at or above sentinel");
    keys_[i] = p;
    update(i);
  }

  Winner peek_min() const {
    if (active_ == 0)
      throw std::logic_error("SuperTournament: queue empty");
    const std::size_t w = nodes_[1];
    assert(w < active_);
    return Winner{w, keys_[w]};
  }

  // Removes the key at slot i. The vacating value always ends up in the
  // slot the tree releases (the old max_index), so repeated removal of
  // the winner sorts the array in place. Steps: de-register the last key
  // from any nodes still naming it, swap the last key with its sister,
  // swap the target out to the tail, then replay the two disturbed paths.
  event_id_t remove(std::size_t i) {
    if (active_ == 0)
      throw std::logic_error("SuperTournament: queue empty");
    if (i >= active_)
      throw std::out_of_range("SuperTournament: key index out of range");
    const event_id_t removed = ids_[i];
    if (active_ == 1) {
      active_ = 0;
      return removed;
    }
    const std::size_t last = active_ - 1;
    const std::size_t last_sister = last >> lssb_position(last);

    // The last key may be registered on a prefix of its path; hand those
    // registries to its sister. When `last` is odd, node `last` survives
    // the shrink as the new pass-through node, and last_sister is exactly
    // the key that must be forwarded there.
    const bool deregistered = nodes_[last] == last;
    if (deregistered) {
      std::size_t p = last;
      while (nodes_[p] == last) {
        nodes_[p] = static_cast<slot_t>(last_sister);
        if (p == 1) break;
        p >>= 1;
      }
    }

    std::size_t target = i;
    bool sister_swapped = false;
    if (target != last) {
      std::swap(keys_[last_sister], keys_[last]);
      std::swap(ids_[last_sister], ids_[last]);
      sister_swapped = true;
      // If the target was the sister, its value just moved to the tail
      // slot and leaves with the shrink; nothing further to relocate.
      if (target == last_sister) target = last;
    }
    if (target != last) {
      std::swap(keys_[target], keys_[last]);
      std::swap(ids_[target], ids_[last]);
    }

    --active_;
    if (active_ >= 1) {
      if (target != last) update(target);
      if ((sister_swapped || deregistered) && last_sister != target)
        update(last_sister);
    }
    return removed;
  }

  // Appends one key at slot size(). When the old max_index is odd the new
  // shape gains a sisterless key (the new max_index halved); its
  // pass-through node must be registered before the new key's path is
  // replayed, because that path reads it as a sibling.
  void insert(priority_t p, event_id_t id) {
    if (active_ == capacity_)
      throw std::length_error("SuperTournament: capacity exhausted");
    if (!usable_priority(p))
      throw std::invalid_argument(
          "SuperTournament: priority at or above sentinel");
    if (active_ == 0) {
      keys_[0] = p;
      ids_[0] = id;
      nodes_[1] = 0;
      active_ = 1;
      return;
    }
    const std::size_t old_max = active_ - 1;
    const std::size_t new_max = active_;
    keys_[new_max] = p;
    ids_[new_max] = id;
    if (old_max % 2 == 1)
      nodes_[old_max + 2] = static_cast<slot_t>((old_max + 1) / 2);
    ++active_;
    update(new_max);
  }

  // Shrinks to a single key by removing the winner repeatedly; afterwards
  // the key array holds the original multiset in non-increasing order.
  void sort_in_place() {
    while (active_ > 1) remove(nodes_[1]);
  }

  std::size_t size() const { return active_; }
  std::size_t slot_count() const { return active_; }
  std::size_t active_count() const { return active_; }
  std::size_t capacity() const { return capacity_; }

  std::size_t max_index() const {
    if (active_ == 0)
      throw std::logic_error("SuperTournament: queue empty");
    return active_ - 1;
  }

  bool is_active_slot(std::size_t i) const { return i < active_; }

  priority_t priority_at(std::size_t i) const {
    if (i >= active_)
      throw std::out_of_range("SuperTournament: key index out of range");
    return keys_[i];
  }

  event_id_t id_at(std::size_t i) const {
    if (i >= active_)
      throw std::out_of_range("SuperTournament: key index out of range");
    return ids_[i];
  }

  std::span<const slot_t> node_slots() const { return nodes_; }
  std::span<const priority_t> priorities() const { return keys_; }
  std::span<const event_id_t> event_ids() const { return ids_; }
  SisterGuard guard() const { return guard_; }

  std::size_t auxiliary_slots() const { return nodes_.size(); }

  std::uint64_t comparison_count() const { return comparisons_; }
  void reset_comparison_count() { comparisons_ = 0; }

 private:
  // Replays key i from its plug-in point to the root. The first
  // comparison is against the sister key (skipped when sisterless); each
  // climb reads the sibling node's registered key as the challenger.
  void update(std::size_t i) {
    assert(active_ >= 1 && i < active_);
    auto [p, s] = find_parent_and_sister(i, active_ - 1, guard_);
    for (;;) {
      if (s != i) {
        ++comparisons_;
        if (keys_[s] < keys_[i]) i = s;
      }
      nodes_[p] = static_cast<slot_t>(i);
      if (p <= 1) break;
      s = nodes_[p ^ 1u];
      p >>= 1;
    }
  }

  void build() {
    const std::size_t m = active_ - 1;
    if (m == 0) {
      nodes_[1] = 0;
      return;
    }
    for (std::size_t j = m / 2 + 1; j <= m; ++j) {
      const std::size_t s = j >> lssb_position(j);
      std::size_t w = s;
      ++comparisons_;
      if (keys_[j] < keys_[s]) w = j;
      nodes_[j] = static_cast<slot_t>(w);
    }
    if (m % 2 == 0) nodes_[m + 1] = static_cast<slot_t>(m / 2);
    for (std::size_t p = m / 2; p >= 1; --p) {
      const std::size_t l = nodes_[2 * p];
      const std::size_t r = nodes_[2 * p + 1];
      std::size_t w = l;
      ++comparisons_;
      if (keys_[r] < keys_[l]) w = r;
      nodes_[p] = static_cast<slot_t>(w);
    }
  }

  SisterGuard guard_;
  std::size_t capacity_ = 0;
  std::size_t active_ = 0;
  std::vector<slot_t> nodes_;
  std::vector<priority_t> keys_;
  std::vector<event_id_t> ids_;
  std::uint64_t comparisons_ = 0;
};

// Shrink-sorts a key set and returns the ids in non-increasing priority
// order. Ids default to the input positions when omitted.
inline std::vector<event_id_t> sort_in_place(std::vector<priority_t> priorities,
                                             std::vector<event_id_t> ids = {}) {
  if (priorities.size() < 2)
    throw std::invalid_argument("sort_in_place: need at least two keys");
  SuperTournament t(std::move(priorities), std::move(ids));
  t.sort_in_place();
  const auto sorted = t.event_ids();
  return {sorted.begin(), sorted.end()};
}

}  // namespace cbtpq
