#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbtpq/bench.hpp"
#include "cbtpq/verify.hpp"

using namespace cbtpq;

TEST_CASE("increment samples hit their closed forms", "[distributions]") {
  CHECK(sample(PriorityDistribution::uniform, 0.5) == 1.0);
  CHECK(sample(PriorityDistribution::uniform, 0.25) == 0.5);
  CHECK(sample(PriorityDistribution::biased, 0.5) ==
        Catch::Approx(1.0).margin(1e-15));
  CHECK(sample(PriorityDistribution::biased, 0.25) ==
        Catch::Approx(0.95).margin(1e-15));
  const double inv_e = 0.36787944117144233;  // exp(-1)
  CHECK(sample(PriorityDistribution::exponential, inv_e) ==
        Catch::Approx(1.0).margin(1e-12));
  // The unit draw is an open interval; the endpoints are invalid inputs.
  CHECK_THROWS_AS(sample(PriorityDistribution::uniform, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(sample(PriorityDistribution::uniform, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(sample(PriorityDistribution::exponential, -0.1),
                  std::domain_error);
}

TEST_CASE("unit draws stay inside the open interval", "[distributions]") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200000; ++k) {
    const double r = open_unit(rng);
    REQUIRE(r > 0.0);
    REQUIRE(r < 1.0);
  }
}

TEST_CASE("all three increment means sit near one", "[distributions]") {
  CHECK(check_distribution_means(300000, 0.03, 9).passed);
}

TEST_CASE("distribution names round-trip", "[distributions]") {
  for (PriorityDistribution d : all_distributions) {
    const auto back = parse_distribution(name_of(d));
    REQUIRE(back.has_value());
    CHECK(*back == d);
  }
  CHECK_FALSE(parse_distribution("gaussian").has_value());
}

TEST_CASE("seeded streams are deterministic and distinct", "[distributions]") {
  std::mt19937_64 a = make_stream(1, 0);
  std::mt19937_64 b = make_stream(1, 0);
  std::mt19937_64 c = make_stream(1, 1);
  std::mt19937_64 d = make_stream(2, 0);
  CHECK(a() == b());
  CHECK(a() == b());
  std::mt19937_64 a2 = make_stream(1, 0);
  CHECK(a2() != c());
  CHECK(make_stream(1, 0)() != d());
}

TEST_CASE("the monotonic clock qualifies and never steps back", "[timing]") {
  REQUIRE_NOTHROW(MonotonicTimer::require_monotonic());
  std::uint64_t prev = MonotonicTimer::now_ns();
  for (int k = 0; k < 1000; ++k) {
    const std::uint64_t now = MonotonicTimer::now_ns();
    REQUIRE(now >= prev);
    prev = now;
  }
}

TEST_CASE("initial queue content accumulates increments", "[bench]") {
  std::mt19937_64 rng = make_stream(3, 0);
  const auto keys = cumulative_priorities(1000, PriorityDistribution::uniform, rng);
  REQUIRE(keys.size() == 1000);
  CHECK(keys[0] > 0.0);
  for (std::size_t i = 1; i < keys.size(); ++i) REQUIRE(keys[i] > keys[i - 1]);
}

TEST_CASE("holding keeps the minimum non-decreasing", "[bench]") {
  std::mt19937_64 rng = make_stream(5, 0);
  ReducedTournament q(
      cumulative_priorities(256, PriorityDistribution::exponential, rng));
  priority_t floor_seen = q.peek_min().priority;
  for (int k = 0; k < 1000; ++k) {
    hold_once(q, PriorityDistribution::exponential, rng);
    const priority_t now = q.peek_min().priority;
    REQUIRE(now >= floor_seen);
    floor_seen = now;
  }
  CHECK(winners_consistent(q));
  CHECK(q.active_count() == 256);
}

TEST_CASE("structures under the same stream see the same hold history",
          "[bench]") {
  std::mt19937_64 ra = make_stream(6, 0);
  std::mt19937_64 rb = make_stream(6, 0);
  MarinTournament a(cumulative_priorities(128, PriorityDistribution::biased, ra));
  ReducedTournament b(
      cumulative_priorities(128, PriorityDistribution::biased, rb));
  for (int k = 0; k < 500; ++k) {
    const Winner wa = a.peek_min();
    const Winner wb = b.peek_min();
    REQUIRE(wa.index == wb.index);
    REQUIRE(wa.priority == wb.priority);
    hold_once(a, PriorityDistribution::biased, ra);
    hold_once(b, PriorityDistribution::biased, rb);
  }
}

TEST_CASE("hold cost in comparisons is value-independent", "[bench]") {
  std::mt19937_64 rng = make_stream(7, 0);
  MarinTournament q(
      cumulative_priorities(1024, PriorityDistribution::uniform, rng));
  q.reset_comparison_count();
  for (int k = 0; k < 100; ++k)
    hold_once(q, PriorityDistribution::uniform, rng);
  CHECK(q.comparison_count() == 100 * 10);  // exactly log2(1024) per hold
}

TEST_CASE("the sort phase shrinks the queue to exactly two keys", "[bench]") {
  std::mt19937_64 rng = make_stream(8, 0);
  SuperTournament q(
      cumulative_priorities(100, PriorityDistribution::uniform, rng));
  const double ns = run_sort_phase(q);
  CHECK(ns >= 0.0);
  CHECK(q.active_count() == 2);

  ReducedTournament r(
      cumulative_priorities(100, PriorityDistribution::uniform, rng));
  run_sort_phase(r);
  CHECK(r.active_count() == 2);

  ReducedTournament tiny({1.0, 2.0});
  CHECK_THROWS_AS(run_sort_phase(tiny), std::invalid_argument);
}

TEST_CASE("scaling divides by the reference group mean", "[bench]") {
  std::vector<BenchRecord> records;
  records.push_back(BenchRecord{"marin", 64, PriorityDistribution::uniform,
                                "hold", 200.0, 0.0, 0.0});
  records.push_back(BenchRecord{"reduced", 64, PriorityDistribution::uniform,
                                "hold", 100.0, 0.0, 0.0});
  scale_to_reference(records);
  CHECK(records[0].ratio == 1.0);
  CHECK(records[1].ratio == 0.5);

  std::vector<BenchRecord> orphan;
  orphan.push_back(BenchRecord{"reduced", 64, PriorityDistribution::uniform,
                               "hold", 100.0, 0.0, 0.0});
  CHECK_THROWS_AS(scale_to_reference(orphan), std::invalid_argument);
}

TEST_CASE("benchmark rows come out in canonical order", "[bench]") {
  BenchParams bp;
  bp.structures = {"super", "marin"};  // scrambled on purpose
  bp.sizes = {64, 16};
  bp.distributions = {PriorityDistribution::biased,
                      PriorityDistribution::exponential};
  bp.warmup = 2;
  bp.timed = 2;
  bp.repeats = 2;
  bp.seed = 42;
  const auto records = run_benchmarks(bp);
  REQUIRE(records.size() == 16);  // 2 structures x 2 sizes x 2 dists x 2 metrics
  std::vector<std::string> got;
  for (const auto& r : records)
    got.push_back(r.structure + "/" + std::to_string(r.n) + "/" +
                  name_of(r.distribution) + "/" + r.metric);
  const std::vector<std::string> want = {
      "marin/16/exponential/hold", "marin/16/exponential/sort",
      "marin/16/biased/hold",      "marin/16/biased/sort",
      "marin/64/exponential/hold", "marin/64/exponential/sort",
      "marin/64/biased/hold",      "marin/64/biased/sort",
      "super/16/exponential/hold", "super/16/exponential/sort",
      "super/16/biased/hold",      "super/16/biased/sort",
      "super/64/exponential/hold", "super/64/exponential/sort",
      "super/64/biased/hold",      "super/64/biased/sort",
  };
  CHECK(got == want);
  for (const auto& r : records) {
    if (r.structure == "marin") CHECK(r.ratio == 1.0);
    CHECK(r.mean >= 0.0);
    CHECK(r.rel_dev >= 0.0);
  }
}

TEST_CASE("benchmark config errors are rejected up front", "[bench]") {
  BenchParams bp;
  bp.warmup = 0;
  bp.timed = 1;
  bp.repeats = 1;
  bp.sizes = {4};
  bp.structures = {"marin", "bogus"};
  CHECK_THROWS_AS(run_benchmarks(bp), std::invalid_argument);
  bp.structures = {"reduced"};  // no reference row
  CHECK_THROWS_AS(run_benchmarks(bp), std::invalid_argument);
  bp.structures = {"marin"};
  bp.sizes = {1};
  CHECK_THROWS_AS(run_benchmarks(bp), std::invalid_argument);
  bp.sizes = {2};  // sort needs three keys
  CHECK_THROWS_AS(run_benchmarks(bp), std::invalid_argument);
  bp.sort = false;
  const auto records = run_benchmarks(bp);  // hold-only is fine at n = 2
  REQUIRE(records.size() == 3);  // one structure x one size x three dists
  CHECK(records[0].metric == "hold");
  bp.hold = false;
  CHECK_THROWS_AS(run_benchmarks(bp), std::invalid_argument);
}

TEST_CASE("the CSV lands atomically with metadata and header", "[bench]") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cbtpq_csv_test";
  fs::create_directories(dir);
  const std::string path = (dir / "out.csv").string();

  BenchParams bp;
  bp.structures = {"marin", "super"};
  bp.sizes = {32};
  bp.distributions = {PriorityDistribution::uniform};
  bp.warmup = 1;
  bp.timed = 2;
  bp.repeats = 2;
  bp.seed = 11;
  const auto records = run_benchmarks(bp);
  write_bench_csv(path, records, bp);

  CHECK_FALSE(fs::exists(path + ".tmp"));
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line.rfind("# cbtpq bench seed=11 warmup=1 timed=2 repeats=2", 0) == 0);
  REQUIRE(std::getline(in, line));
  CHECK(line == "structure,n,distribution,metric,mean,rel_dev,ratio");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == records.size());
  fs::remove_all(dir);

  CHECK_THROWS_AS(
      write_bench_csv("/nonexistent_dir_cbtpq/x.csv", records, bp), io_error);
}

TEST_CASE("csv rows print with fixed precision", "[bench]") {
  BenchRecord r{"marin", 1024, PriorityDistribution::uniform,
                "hold", 55.5,  0.0125,
                1.0};
  CHECK(csv_row(r) == "marin,1024,uniform,hold,55.500000,0.012500,1.000000");
}
