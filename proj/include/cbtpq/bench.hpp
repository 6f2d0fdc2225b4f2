#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "cbtpq/common.hpp"
#include "cbtpq/distributions.hpp"
#include "cbtpq/marin.hpp"
#include "cbtpq/pqcore.hpp"
#include "cbtpq/reduced.hpp"
#include "cbtpq/supercbt.hpp"
#include "cbtpq/timing.hpp"

namespace cbtpq {

inline constexpr const char* canonical_structures[] = {"marin", "marin-vs",
                                                       "reduced", "super"};

inline bool known_structure(const std::string& s) {
  for (const char* c : canonical_structures)
    if (s == c) return true;
  return false;
}

struct BenchRecord {
  std::string structure;
  std::size_t n = 0;
  PriorityDistribution distribution = PriorityDistribution::exponential;
  std::string metric;  // "hold" (ns per op) or "sort" (ns total)
  double mean = 0.0;
  double rel_dev = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();
};

// Defaults mirror the full protocol; desk-scale runs dial the counts down.
struct BenchParams {
  std::vector<std::string> structures{"marin", "marin-vs", "reduced", "super"};
  std::vector<std::size_t> sizes{std::size_t{1} << 12, std::size_t{1} << 16,
                                 std::size_t{1} << 20};
  std::vector<PriorityDistribution> distributions{
      PriorityDistribution::exponential, PriorityDistribution::uniform,
      PriorityDistribution::biased};
  std::size_t warmup = 1'000'000;
  std::size_t timed = 1'000'000;
  std::size_t repeats = 10;
  std::uint64_t seed = 1;
  bool hold = true;
  bool sort = true;
};

// Initial queue content: cumulative increments, i.e. the event horizon a
// steady simulation would have accumulated.
inline std::vector<priority_t> cumulative_priorities(std::size_t n,
                                                     PriorityDistribution d,
                                                     std::mt19937_64& rng) {
  std::vector<priority_t> out(n);
  double acc = 0.0;
  for (priority_t& p : out) {
    acc += sample(d, open_unit(rng));
    p = acc;
  }
  return out;
}

// One hold operation: the winner's priority is advanced by a random
// increment, modeling dismiss-and-reschedule at constant queue size.
template <MinQueue Q>
void hold_once(Q& q, PriorityDistribution d, std::mt19937_64& rng) {
  const Winner w = q.peek_min();
  q.update_key(w.index, w.priority + sample(d, open_unit(rng)));
}

// Runs warmup holds untimed, then timed holds with the clock read around
// the update call only (the RNG draw stays outside the measured block).
// Returns mean nanoseconds per update.
template <MinQueue Q>
double run_hold_phase(Q& q, PriorityDistribution d, std::mt19937_64& rng,
                      std::size_t warmup, std::size_t timed) {
  for (std::size_t k = 0; k < warmup; ++k) hold_once(q, d, rng);
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < timed; ++k) {
    const Winner w = q.peek_min();
    const priority_t p = w.priority + sample(d, open_unit(rng));
    const std::uint64_t t0 = MonotonicTimer::now_ns();
    q.update_key(w.index, p);
    const std::uint64_t t1 = MonotonicTimer::now_ns();
    acc += t1 - t0;
  }
  return timed == 0 ? 0.0 : static_cast<double>(acc) / static_cast<double>(timed);
}

// Times the shrink loop: dismiss the winner until two keys remain. One
// clock pair around the whole loop; returns total nanoseconds.
template <MinQueue Q>
double run_sort_phase(Q& q) {
  const std::size_t n = q.active_count();
  if (n < 3)
    throw std::invalid_argument("sort benchmark needs at least 3 keys");
  const std::size_t shrinks = n - 2;
  const std::uint64_t t0 = MonotonicTimer::now_ns();
  for (std::size_t k = 0; k < shrinks; ++k) dismiss_min(q);
  const std::uint64_t t1 = MonotonicTimer::now_ns();
  return static_cast<double>(t1 - t0);
}

struct CellTimings {
  std::vector<double> hold;  // ns per op, one entry per repeat
  std::vector<double> sort;  // ns total, one entry per repeat
};

// One (structure, n, distribution) cell. The hold phase always runs, even
// when only the sort metric is requested: the sort loop starts from the
// post-hold steady state by protocol. Each repeat gets its own RNG stream.
template <MinQueue Q>
CellTimings run_cell(std::size_t n, PriorityDistribution d,
                     const BenchParams& bp) {
  MonotonicTimer::require_monotonic();
  CellTimings ct;
  for (std::size_t rep = 0; rep < bp.repeats; ++rep) {
    std::mt19937_64 rng = make_stream(bp.seed, rep);
    Q q(cumulative_priorities(n, d, rng));
    const double hold_ns = run_hold_phase(q, d, rng, bp.warmup, bp.timed);
    if (bp.hold) ct.hold.push_back(hold_ns);
    if (bp.sort) ct.sort.push_back(run_sort_phase(q));
  }
  return ct;
}

inline CellTimings run_cell_for(const std::string& structure, std::size_t n,
                                PriorityDistribution d,
                                const BenchParams& bp) {
  if (structure == "marin") return run_cell<MarinTournament>(n, d, bp);
  if (structure == "marin-vs") return run_cell<MarinVsTournament>(n, d, bp);
  if (structure == "reduced") return run_cell<ReducedTournament>(n, d, bp);
  if (structure == "super") return run_cell<SuperTournament>(n, d, bp);
  throw std::invalid_argument("unknown structure: " + structure);
}

inline double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sample standard deviation over the mean; zero when undefined.
inline double rel_dev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  if (m == 0.0) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return sd / m;
}

// Fills ratio = mean / reference mean within each (n, distribution,
// metric) group; the reference structure's own rows come out exactly 1.
inline void scale_to_reference(std::vector<BenchRecord>& records,
                               const std::string& reference = "marin") {
  std::map<std::tuple<std::size_t, int, std::string>, double> ref;
  for (const BenchRecord& r : records)
    if (r.structure == reference)
      ref[{r.n, static_cast<int>(r.distribution), r.metric}] = r.mean;
  for (BenchRecord& r : records) {
    const auto it =
        ref.find({r.n, static_cast<int>(r.distribution), r.metric});
    if (it == ref.end())
      throw std::invalid_argument(
          "scaling requires a " + reference + " row in every group");
    r.ratio = it->second == 0.0 ? (r.mean == 0.0 ? 1.0 : 0.0)
                                : r.mean / it->second;
  }
}

// Runs the full cross product in deterministic row order: structures in
// canonical order, sizes ascending, distributions in declaration order,
// hold before sort.
inline std::vector<BenchRecord> run_benchmarks(BenchParams bp) {
  if (bp.repeats < 1) throw std::invalid_argument("repeats must be positive");
  if (!bp.hold && !bp.sort)
    throw std::invalid_argument("no metric requested");
  if (bp.structures.empty()) throw std::invalid_argument("no structures");
  if (bp.sizes.empty()) throw std::invalid_argument("no sizes");
  if (bp.distributions.empty()) throw std::invalid_argument("no distributions");
  for (const std::string& s : bp.structures)
    if (!known_structure(s))
      throw std::invalid_argument("unknown structure: " + s);
  for (std::size_t n : bp.sizes) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (bp.sort && n < 3)
      throw std::invalid_argument("sort benchmark needs n >= 3");
    if (n > max_key_count) throw std::invalid_argument("n too large");
  }
  bool have_reference = false;
  for (const std::string& s : bp.structures) have_reference |= s == "marin";
  if (!have_reference)
    throw std::invalid_argument(
        "benchmarks are scaled to marin; include it in --structure");

  // normalize ordering and drop duplicates
  std::vector<std::string> structures;
  for (const char* c : canonical_structures)
    for (const std::string& s : bp.structures)
      if (s == c && std::find(structures.begin(), structures.end(), s) ==
                        structures.end())
        structures.push_back(s);
  std::sort(bp.sizes.begin(), bp.sizes.end());
  bp.sizes.erase(std::unique(bp.sizes.begin(), bp.sizes.end()),
                 bp.sizes.end());
  std::vector<PriorityDistribution> dists;
  for (PriorityDistribution d : all_distributions)
    if (std::find(bp.distributions.begin(), bp.distributions.end(), d) !=
            bp.distributions.end() &&
        std::find(dists.begin(), dists.end(), d) == dists.end())
      dists.push_back(d);

  std::vector<BenchRecord> records;
  for (const std::string& s : structures)
    for (std::size_t n : bp.sizes)
      for (PriorityDistribution d : dists) {
        const CellTimings ct = run_cell_for(s, n, d, bp);
        if (bp.hold)
          records.push_back(BenchRecord{s, n, d, "hold", mean_of(ct.hold),
                                        rel_dev_of(ct.hold), 0.0});
        if (bp.sort)
          records.push_back(BenchRecord{s, n, d, "sort", mean_of(ct.sort),
                                        rel_dev_of(ct.sort), 0.0});
      }
  scale_to_reference(records);
  return records;
}

inline std::string csv_row(const BenchRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%zu,%s,%s,%.6f,%.6f,%.6f",
                r.structure.c_str(), r.n, name_of(r.distribution),
                r.metric.c_str(), r.mean, r.rel_dev, r.ratio);
  return buf;
}

// Writes the CSV atomically: a temp file is renamed over the destination
// only after a clean flush, so a failed run never leaves a partial file.
inline void write_bench_csv(const std::string& path,
                            const std::vector<BenchRecord>& records,
                            const BenchParams& bp) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + tmp + " for writing");
    out << "# cbtpq bench seed=" << bp.seed << " warmup=" << bp.warmup
        << " timed=" << bp.timed << " repeats=" << bp.repeats
        << " clock=steady_clock_ns rng=mt19937_64"
        << " stream=splitmix64(seed,repeat) units=ns\n";
    out << "structure,n,distribution,metric,mean,rel_dev,ratio\n";
    for (const BenchRecord& r : records) out << csv_row(r) << "\n";
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw io_error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw io_error("cannot move " + tmp + " to " + path);
  }
}

}  // namespace cbtpq
