#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cbtpq/bench.hpp"
#include "cbtpq/common.hpp"
#include "cbtpq/supercbt.hpp"
#include "cbtpq/verify.hpp"

namespace cbtpq {

// Process exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 1;
inline constexpr int exit_verification = 2;
inline constexpr int exit_io = 3;

struct BenchCommand {
  BenchParams params;
  std::string out_path = "bench.csv";
};

inline int run_bench_command(const BenchCommand& cmd, std::ostream& out,
                             std::ostream& err) {
  try {
    const std::vector<BenchRecord> records = run_benchmarks(cmd.params);
    write_bench_csv(cmd.out_path, records, cmd.params);
    out << "wrote " << records.size() << " rows to " << cmd.out_path << "\n";
    return exit_ok;
  } catch (const io_error& e) {
    err << "cbtpq bench: " << e.what() << "\n";
    return exit_io;
  } catch (const std::exception& e) {
    err << "cbtpq bench: " << e.what() << "\n";
    return exit_config;
  }
}

struct VerifyCommand {
  std::size_t max_n = 4096;  // upper bound for the pairing sweep and scripts
  std::size_t ops = 100000;  // operations per differential script
  std::uint64_t seed = 1;
};

namespace detail {

inline bool verify_step(std::ostream& out, const std::string& label,
                        const CheckResult& result) {
  if (result.passed) {
    out << "  ok    " << label << "\n";
    return true;
  }
  out << "  FAIL  " << label << ": " << result.detail << "\n";
  return false;
}

}  // namespace detail

inline int run_verify_command(const VerifyCommand& cmd, std::ostream& out,
                              std::ostream& err) {
  try {
    bool all_passed = true;
    if (cmd.max_n >= 2) {
      all_passed &= detail::verify_step(
          out, "pairing involution (2.." + std::to_string(cmd.max_n) + ")",
          check_pairing_sweep(2, cmd.max_n));
    } else {
      out << "  skip  pairing involution (needs --max-n of at least 2)\n";
    }
    const std::size_t script_n = cmd.max_n < 512 ? cmd.max_n : 512;
    if (script_n >= 2) {
      for (const char* structure : canonical_structures) {
        all_passed &= detail::verify_step(
            out,
            std::string("differential scripts, ") + structure + " (sizes 2.." +
                std::to_string(script_n) + ", " + std::to_string(cmd.ops) +
                " ops, seed " + std::to_string(cmd.seed) + ")",
            run_differential_suite(structure, script_n, cmd.ops, cmd.seed));
      }
    } else {
      out << "  skip  differential scripts (needs --max-n of at least 2)\n";
    }
    all_passed &= detail::verify_step(
        out, "reduced comparison count is exactly k for n = 2^k, k in 4..16",
        check_reduced_count_law(4, 16, cmd.seed));
    if (cmd.max_n >= 8) {
      all_passed &= detail::verify_step(
          out,
          "super comparison counts decline while shrinking " +
              std::to_string(cmd.max_n) + " keys to sorted order",
          check_super_sort_count_decline(cmd.max_n, cmd.seed));
    } else {
      out << "  skip  super shrink decline (needs --max-n of at least 8)\n";
    }
    all_passed &= detail::verify_step(
        out, "hold increment means within 2% of 1.0 over 10^6 draws",
        check_distribution_means(1000000, 0.02, cmd.seed));
    if (!all_passed) {
      err << "cbtpq verify: FAILED\n";
      return exit_verification;
    }
    out << "cbtpq verify: all checks passed\n";
    return exit_ok;
  } catch (const std::exception& e) {
    err << "cbtpq verify: " << e.what() << "\n";
    return exit_config;
  }
}

struct SortCommand {
  std::string input_path;
  std::string out_path;  // empty means stdout
  bool ascending = false;
};

namespace detail {

struct SortLine {
  std::string id_text;
  std::string priority_text;
  priority_t priority;
};

// Parses "id,priority" records, keeping the original text of both fields so
// the output is byte-identical to the input lines it forwards.
inline std::vector<SortLine> read_sort_lines(std::istream& in) {
  std::vector<SortLine> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fail = [&](const std::string& what) -> io_error {
      return io_error("line " + std::to_string(line_no) + ": " + what);
    };
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw fail("expected id,priority");
    SortLine rec;
    rec.id_text = line.substr(0, comma);
    rec.priority_text = line.substr(comma + 1);
    if (rec.priority_text.empty()) throw fail("empty priority field");
    const char* begin = rec.priority_text.c_str();
    char* end = nullptr;
    rec.priority = std::strtod(begin, &end);
    if (end != begin + rec.priority_text.size())
      throw fail("malformed priority '" + rec.priority_text + "'");
    if (!usable_priority(rec.priority))
      throw fail("priority '" + rec.priority_text + "' is out of range");
    lines.push_back(std::move(rec));
  }
  if (in.bad()) throw io_error("read error after line " + std::to_string(line_no));
  return lines;
}

inline void write_sort_lines(std::ostream& out,
                             const std::vector<SortLine>& lines,
                             const std::vector<event_id_t>& order) {
  for (const event_id_t id : order)
    out << lines[id].id_text << ',' << lines[id].priority_text << '\n';
}

}  // namespace detail

inline int run_sort_command(const SortCommand& cmd, std::ostream& out,
                            std::ostream& err) {
  try {
    std::ifstream in(cmd.input_path);
    if (!in) {
      err << "cbtpq sort: cannot open " << cmd.input_path << "\n";
      return exit_io;
    }
    const std::vector<detail::SortLine> lines = detail::read_sort_lines(in);
    std::vector<event_id_t> order(lines.size());
    std::iota(order.begin(), order.end(), event_id_t{0});
    if (lines.size() >= 2) {
      std::vector<priority_t> priorities(lines.size());
      for (std::size_t i = 0; i < lines.size(); ++i)
        priorities[i] = lines[i].priority;
      order = sort_in_place(std::move(priorities), std::move(order));
    }
    if (cmd.ascending) std::reverse(order.begin(), order.end());
    if (cmd.out_path.empty()) {
      detail::write_sort_lines(out, lines, order);
      if (!out) throw io_error("write error on standard output");
      return exit_ok;
    }
    const std::string tmp_path = cmd.out_path + ".tmp";
    {
      std::ofstream file(tmp_path, std::ios::trunc);
      if (!file) throw io_error("cannot open " + tmp_path + " for writing");
      detail::write_sort_lines(file, lines, order);
      file.flush();
      if (!file) {
        std::remove(tmp_path.c_str());
        throw io_error("write error on " + tmp_path);
      }
    }
    if (std::rename(tmp_path.c_str(), cmd.out_path.c_str()) != 0) {
      std::remove(tmp_path.c_str());
      throw io_error("cannot rename " + tmp_path + " to " + cmd.out_path);
    }
    return exit_ok;
  } catch (const io_error& e) {
    err << "cbtpq sort: " << e.what() << "\n";
    return exit_io;
  } catch (const std::exception& e) {
    err << "cbtpq sort: " << e.what() << "\n";
    return exit_config;
  }
}

}  // namespace cbtpq
