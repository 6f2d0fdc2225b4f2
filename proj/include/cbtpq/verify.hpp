#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cbtpq/bitnav.hpp"
#include "cbtpq/common.hpp"
#include "cbtpq/differential.hpp"
#include "cbtpq/distributions.hpp"
#include "cbtpq/marin.hpp"
#include "cbtpq/pqcore.hpp"
#include "cbtpq/reduced.hpp"
#include "cbtpq/supercbt.hpp"

// Whole-structure invariant checks shared by the verification CLI, the
// acceptance gate, and the unit tests.

namespace cbtpq {

struct CheckResult {
  bool passed = true;
  std::string detail;  // names the first violation

  explicit operator bool() const { return passed; }
};

inline CheckResult check_fail(std::string detail) {
  return CheckResult{false, std::move(detail)};
}

// Verifies that the SuperCBT pairing at a given max_index is a clean
// partition: the sister relation is an involution, both partners agree on
// the parent node, every parent is claimed by exactly one pair or one
// sisterless key, and the sisterless count matches the parity.
inline CheckResult check_pairing(std::size_t max_index,
                                 SisterGuard guard = SisterGuard::strict) {
  const auto where = [&](std::size_t i) {
    return "max_index " + std::to_string(max_index) + ", key " +
           std::to_string(i);
  };
  std::vector<unsigned char> claim_count(max_index + 2, 0);
  std::vector<std::size_t> first_claim(max_index + 2, 0);
  std::size_t sisterless = 0;
  for (std::size_t i = 0; i <= max_index; ++i) {
    const LeafLink link = find_parent_and_sister(i, max_index, guard);
    if (link.parent == 0 || link.parent > max_index + 1)
      return check_fail(where(i) + ": parent " + std::to_string(link.parent) +
                        " outside the node range");
    if (i > max_index / 2 && link.parent != i)
      return check_fail(where(i) + ": right key must plug in at its own node");
    if (link.sister == i) {
      ++sisterless;
    } else {
      if (link.sister > max_index)
        return check_fail(where(i) + ": sister " +
                          std::to_string(link.sister) + " beyond max_index");
      const LeafLink back = find_parent_and_sister(link.sister, max_index, guard);
      if (back.sister != i)
        return check_fail(where(i) + ": sister relation not an involution (" +
                          std::to_string(i) + " -> " +
                          std::to_string(link.sister) + " -> " +
                          std::to_string(back.sister) + ")");
      if (back.parent != link.parent)
        return check_fail(where(i) + ": partners disagree on the parent node");
    }
    if (claim_count[link.parent] == 0) first_claim[link.parent] = i;
    if (++claim_count[link.parent] > 2)
      return check_fail(where(i) + ": node " + std::to_string(link.parent) +
                        " claimed by more than two keys");
  }
  // A node claimed once must belong to a sisterless key; claimed twice,
  // to mutual sisters (the involution above already ties the second
  // claimant to the first).
  for (std::size_t node = 0; node <= max_index + 1; ++node) {
    if (claim_count[node] != 1) continue;
    const LeafLink link = find_parent_and_sister(first_claim[node], max_index, guard);
    if (link.sister != first_claim[node])
      return check_fail(where(first_claim[node]) + ": node " +
                        std::to_string(node) + " half-claimed by a paired key");
  }
  if (sisterless != (max_index + 1) % 2)
    return check_fail("max_index " + std::to_string(max_index) + ": " +
                      std::to_string(sisterless) + " sisterless keys");
  return {};
}

inline CheckResult check_pairing_sweep(std::size_t min_active,
                                       std::size_t max_active,
                                       SisterGuard guard = SisterGuard::strict) {
  for (std::size_t n = std::max<std::size_t>(2, min_active); n <= max_active;
       ++n) {
    CheckResult r = check_pairing(n - 1, guard);
    if (!r.passed) return r;
  }
  return {};
}

// The winners_consistent checks recompute every node from the key values
// and compare with the stored slots. They assume distinct priorities:
// with ties, a legitimately updated tree may differ from the from-scratch
// recomputation in which tied holder it registered.

inline bool winners_consistent(const ReducedTournament& t) {
  const std::size_t n = t.size();
  const auto keys = t.priorities();
  const auto nodes = t.node_slots();
  std::vector<std::size_t> expect(n, 0);
  for (std::size_t i = 0; i < n; i += 2)
    expect[(i + n) / 2] = keys[i + 1] < keys[i] ? i + 1 : i;
  for (std::size_t p = n / 2; p-- > 1;) {
    const std::size_t l = expect[2 * p];
    const std::size_t r = expect[2 * p + 1];
    expect[p] = keys[r] < keys[l] ? r : l;
  }
  for (std::size_t p = 1; p < n; ++p)
    if (nodes[p] != expect[p]) return false;
  return true;
}

inline bool winners_consistent(const MarinTournament& t) {
  const std::size_t n = t.size();
  const auto keys = t.priorities();
  const auto nodes = t.node_slots();
  for (std::size_t i = 0; i < n; ++i)
    if (nodes[n + i] != i) return false;
  std::vector<std::size_t> expect(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) expect[n + i] = i;
  for (std::size_t p = n; p-- > 1;) {
    const std::size_t l = expect[2 * p];
    const std::size_t r = expect[2 * p + 1];
    expect[p] = keys[r] < keys[l] ? r : l;
  }
  for (std::size_t p = 1; p < n; ++p)
    if (nodes[p] != expect[p]) return false;
  return true;
}

inline bool winners_consistent(const SuperTournament& t) {
  const std::size_t n = t.size();
  const auto nodes = t.node_slots();
  if (n == 0) return true;
  if (n == 1) return nodes[1] == 0;
  const std::size_t m = n - 1;
  const auto keys = t.priorities();
  std::vector<std::size_t> expect(m + 2, 0);
  for (std::size_t j = m / 2 + 1; j <= m; ++j) {
    const std::size_t s = j >> lssb_position(j);
    expect[j] = keys[j] < keys[s] ? j : s;
  }
  if (m % 2 == 0) expect[m + 1] = m / 2;
  for (std::size_t p = m / 2; p >= 1; --p) {
    const std::size_t l = expect[2 * p];
    const std::size_t r = expect[2 * p + 1];
    expect[p] = keys[r] < keys[l] ? r : l;
  }
  const std::size_t top = m % 2 == 0 ? m + 1 : m;
  for (std::size_t p = 1; p <= top; ++p)
    if (nodes[p] != expect[p]) return false;
  return true;
}

inline bool winners_consistent(const MarinVsTournament& t) {
  if (t.size() == 0) return true;
  const std::size_t last = t.last_leaf();
  const std::size_t first = (last + 1) / 2;
  const auto keys = t.priorities();
  const auto nodes = t.node_slots();
  std::vector<std::size_t> expect(last + 1, 0);
  for (std::size_t h = first; h <= last; ++h) expect[h] = nodes[h];
  for (std::size_t p = first; p-- > 1;) {
    const std::size_t l = expect[2 * p];
    const std::size_t r = expect[2 * p + 1];
    expect[p] = keys[r] < keys[l] ? r : l;
  }
  for (std::size_t p = 1; p < first; ++p)
    if (nodes[p] != expect[p]) return false;
  return true;
}

// After any removal, no live node slot may still name an index beyond the
// shrunken range.
inline bool deregistration_complete(const SuperTournament& t) {
  if (t.size() <= 1) return true;
  const std::size_t m = t.size() - 1;
  const auto nodes = t.node_slots();
  const std::size_t top = m % 2 == 0 ? m + 1 : m;
  for (std::size_t p = 1; p <= top; ++p)
    if (nodes[p] > m) return false;
  return true;
}

// Active slots and live leaves must be in bijection: hosts distinct, all
// inside the live range, and exactly active-count of them.
inline bool host_map_consistent(const MarinVsTournament& t) {
  const std::size_t active = t.size();
  if (active == 0) return true;
  const std::size_t last = t.last_leaf();
  const std::size_t first = (last + 1) / 2;
  if (active != last - first + 1) return false;
  std::vector<char> seen(last + 1, 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.key_slots(); ++i) {
    if (!t.is_active_slot(i)) continue;
    ++count;
    const std::size_t h = t.host_of(i);
    if (h < first || h > last) return false;
    if (seen[h]) return false;
    seen[h] = 1;
  }
  return count == active;
}

// The fixed-shape comparison law: a full update in a 2^k-key reduced
// tournament costs exactly k comparisons, whatever the values are.
inline CheckResult check_reduced_count_law(unsigned k_min, unsigned k_max,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(0.0, 1.0e6);
  for (unsigned k = k_min; k <= k_max; ++k) {
    const std::size_t n = std::size_t{1} << k;
    std::vector<priority_t> priorities(n);
    for (priority_t& p : priorities) p = val(rng);
    ReducedTournament t(std::move(priorities));
    const priority_t probes[] = {val(rng), 0.0, 9.9e305, val(rng)};
    for (std::size_t trial = 0; trial < 64; ++trial) {
      const std::size_t i = rng() % n;
      t.reset_comparison_count();
      t.update_key(i, probes[trial % 4]);
      if (t.comparison_count() != k)
        return check_fail("N=2^" + std::to_string(k) + ": update(" +
                          std::to_string(i) + ") took " +
                          std::to_string(t.comparison_count()) +
                          " comparisons, expected " + std::to_string(k));
    }
  }
  return {};
}

// As a SuperCBT shrink-sorts, update paths shorten; the per-removal
// comparison average over the back half of the run must undercut the
// front half.
inline CheckResult check_super_sort_count_decline(std::size_t n,
                                                  std::uint64_t seed) {
  if (n < 8) return check_fail("decline check needs n >= 8");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(0.0, 1.0e6);
  std::vector<priority_t> priorities(n);
  for (priority_t& p : priorities) p = val(rng);
  SuperTournament t(std::move(priorities));
  t.reset_comparison_count();
  const std::size_t shrinks = n - 2;
  std::vector<std::uint64_t> per_removal(shrinks);
  std::uint64_t before = 0;
  for (std::size_t k = 0; k < shrinks; ++k) {
    t.remove(t.peek_min().index);
    per_removal[k] = t.comparison_count() - before;
    before = t.comparison_count();
  }
  const std::size_t half = shrinks / 2;
  double front = 0, back = 0;
  for (std::size_t k = 0; k < half; ++k) front += double(per_removal[k]);
  for (std::size_t k = half; k < shrinks; ++k) back += double(per_removal[k]);
  front /= double(half);
  back /= double(shrinks - half);
  if (!(back < front))
    return check_fail("per-removal comparisons did not decline: front half " +
                      std::to_string(front) + ", back half " +
                      std::to_string(back));
  return {};
}

// Unit-mean sanity of the three increment distributions.
inline CheckResult check_distribution_means(std::size_t draws, double tol,
                                            std::uint64_t seed) {
  for (PriorityDistribution d : all_distributions) {
    std::mt19937_64 rng =
        make_stream(seed, static_cast<std::uint64_t>(d) + 101);
    double acc = 0.0;
    for (std::size_t k = 0; k < draws; ++k) acc += sample(d, open_unit(rng));
    const double mean = acc / static_cast<double>(draws);
    if (std::abs(mean - 1.0) > tol)
      return check_fail(std::string(name_of(d)) + " sample mean " +
                        std::to_string(mean) + " outside 1 +/- " +
                        std::to_string(tol));
  }
  return {};
}

// Random-script differential suite for one structure across a ladder of
// sizes. Failures carry the seed and the failing op in replay form.
inline CheckResult run_differential_suite(const std::string& structure,
                                          std::size_t max_n, std::size_t ops,
                                          std::uint64_t seed) {
  const std::size_t ladder[] = {2, 3, 5, 8, 16, 33, 64, 128, 257, 512};
  for (std::size_t n : ladder) {
    if (n > max_n) break;
    std::mt19937_64 rng = make_stream(seed, n);
    std::uniform_real_distribution<double> val(0.0, 1.0e6);
    std::vector<priority_t> priorities(n);
    for (priority_t& p : priorities) p = val(rng);

    ScriptConfig cfg;
    cfg.op_count = ops;
    cfg.seed = rng();
    DifferentialResult r;
    if (structure == "marin") {
      MarinTournament q(std::move(priorities));
      r = run_random_ops(q, cfg);
    } else if (structure == "marin-vs") {
      MarinVsTournament q(std::move(priorities));
      r = run_random_ops(q, cfg);
    } else if (structure == "reduced") {
      ReducedTournament q(std::move(priorities));
      r = run_random_ops(q, cfg);
    } else if (structure == "super") {
      SuperTournament q(std::move(priorities), 2 * n);
      r = run_random_ops(q, cfg);
    } else {
      return check_fail("unknown structure: " + structure);
    }
    if (!r.passed)
      return check_fail(structure + " n=" + std::to_string(n) + " seed=" +
                        std::to_string(seed) + ": " + r.failure);
  }
  return {};
}

}  // namespace cbtpq
