#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cbtpq/cli.hpp"

using namespace cbtpq;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "cbtpq_cli_test";
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
};

struct SortRun {
  int code = 0;
  std::string out;
  std::string err;
};

SortRun sort_run(const SortCommand& cmd) {
  SortRun r;
  std::ostringstream out, err;
  r.code = run_sort_command(cmd, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("sort orders ids by non-increasing priority", "[cli]") {
  TempDir dir;
  SortCommand cmd;
  cmd.input_path = dir.file("in.txt", "a,3.0\nb,1.0\nc,2.0\n");
  const SortRun r = sort_run(cmd);
  CHECK(r.code == exit_ok);
  CHECK(r.out == "a,3.0\nc,2.0\nb,1.0\n");
  CHECK(r.err.empty());

  cmd.ascending = true;
  const SortRun asc = sort_run(cmd);
  CHECK(asc.code == exit_ok);
  CHECK(asc.out == "b,1.0\nc,2.0\na,3.0\n");
}

TEST_CASE("sort copies tiny inputs through", "[cli]") {
  TempDir dir;
  SortCommand cmd;
  cmd.input_path = dir.file("one.txt", "only,42.5\n");
  const SortRun one = sort_run(cmd);
  CHECK(one.code == exit_ok);
  CHECK(one.out == "only,42.5\n");

  cmd.input_path = dir.file("none.txt", "");
  const SortRun none = sort_run(cmd);
  CHECK(none.code == exit_ok);
  CHECK(none.out.empty());
}

TEST_CASE("sort preserves the original priority spelling", "[cli]") {
  TempDir dir;
  SortCommand cmd;
  cmd.input_path = dir.file("fmt.txt", "x,1e1\ny,2.50\nz,0003\n");
  const SortRun r = sort_run(cmd);
  CHECK(r.code == exit_ok);
  CHECK(r.out == "x,1e1\nz,0003\ny,2.50\n");
}

TEST_CASE("sort is deterministic, ties included", "[cli]") {
  TempDir dir;
  SortCommand cmd;
  cmd.input_path =
      dir.file("tie.txt", "p,5.0\nq,5.0\nr,1.0\ns,5.0\nt,9.0\n");
  const SortRun first = sort_run(cmd);
  const SortRun second = sort_run(cmd);
  CHECK(first.code == exit_ok);
  CHECK(first.out == second.out);
  // Same multiset, largest first, smallest last.
  CHECK(first.out.find("t,9.0") == 0);
  CHECK(first.out.rfind("r,1.0\n") == first.out.size() - 6);
}

TEST_CASE("sort can write to a file atomically", "[cli]") {
  TempDir dir;
  SortCommand cmd;
  cmd.input_path = dir.file("in.txt", "a,3.0\nb,1.0\n");
  cmd.out_path = (dir.path / "out.txt").string();
  const SortRun r = sort_run(cmd);
  CHECK(r.code == exit_ok);
  CHECK(r.out.empty());
  CHECK(TempDir::slurp(cmd.out_path) == "a,3.0\nb,1.0\n");
  CHECK_FALSE(fs::exists(cmd.out_path + ".tmp"));
}

TEST_CASE("sort reports bad input with the line number", "[cli]") {
  TempDir dir;
  SortCommand cmd;

  cmd.input_path = dir.file("bad1.txt", "a,3.0\nb,oops\n");
  SortRun r = sort_run(cmd);
  CHECK(r.code == exit_io);
  CHECK(r.err.find("line 2") != std::string::npos);

  cmd.input_path = dir.file("bad2.txt", "no-comma-here\n");
  r = sort_run(cmd);
  CHECK(r.code == exit_io);
  CHECK(r.err.find("line 1") != std::string::npos);

  cmd.input_path = dir.file("bad3.txt", "a,1.0\nz,inf\n");
  r = sort_run(cmd);
  CHECK(r.code == exit_io);
  CHECK(r.err.find("line 2") != std::string::npos);

  cmd.input_path = (dir.path / "missing.txt").string();
  r = sort_run(cmd);
  CHECK(r.code == exit_io);
  CHECK(r.err.find("cannot open") != std::string::npos);
}

TEST_CASE("sort tolerates CRLF line endings", "[cli]") {
  TempDir dir;
  SortCommand cmd;
  cmd.input_path = dir.file("crlf.txt", "a,3.0\r\nb,1.0\r\n");
  const SortRun r = sort_run(cmd);
  CHECK(r.code == exit_ok);
  CHECK(r.out == "a,3.0\nb,1.0\n");
}

TEST_CASE("verify command reports per-suite results", "[cli]") {
  VerifyCommand cmd;
  cmd.max_n = 64;
  cmd.ops = 300;
  cmd.seed = 17;
  std::ostringstream out, err;
  CHECK(run_verify_command(cmd, out, err) == exit_ok);
  const std::string text = out.str();
  CHECK(text.find("pairing involution") != std::string::npos);
  CHECK(text.find("differential scripts, marin ") != std::string::npos);
  CHECK(text.find("differential scripts, super ") != std::string::npos);
  CHECK(text.find("all checks passed") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("verify command skips what a tiny bound cannot exercise", "[cli]") {
  VerifyCommand cmd;
  cmd.max_n = 1;
  std::ostringstream out, err;
  CHECK(run_verify_command(cmd, out, err) == exit_ok);
  CHECK(out.str().find("skip  pairing involution") != std::string::npos);
}

TEST_CASE("bench command writes its CSV and reports row counts", "[cli]") {
  TempDir dir;
  BenchCommand cmd;
  cmd.params.structures = {"marin", "reduced"};
  cmd.params.sizes = {128};
  cmd.params.distributions = {PriorityDistribution::uniform};
  cmd.params.warmup = 5;
  cmd.params.timed = 5;
  cmd.params.repeats = 2;
  cmd.params.seed = 7;
  cmd.out_path = (dir.path / "r.csv").string();
  std::ostringstream out, err;
  CHECK(run_bench_command(cmd, out, err) == exit_ok);
  CHECK(out.str().find("wrote 4 rows") != std::string::npos);
  CHECK(fs::exists(cmd.out_path));
}

TEST_CASE("bench command maps failures to exit codes", "[cli]") {
  BenchCommand cmd;
  cmd.params.structures = {"reduced"};  // missing the reference structure
  cmd.params.sizes = {8};
  cmd.params.warmup = 1;
  cmd.params.timed = 1;
  cmd.params.repeats = 1;
  std::ostringstream out, err;
  CHECK(run_bench_command(cmd, out, err) == exit_config);
  CHECK_FALSE(err.str().empty());

  BenchCommand io_cmd;
  io_cmd.params.structures = {"marin"};
  io_cmd.params.sizes = {8};
  io_cmd.params.warmup = 1;
  io_cmd.params.timed = 1;
  io_cmd.params.repeats = 1;
  io_cmd.out_path = "/nonexistent_dir_cbtpq/r.csv";
  std::ostringstream out2, err2;
  CHECK(run_bench_command(io_cmd, out2, err2) == exit_io);
}
