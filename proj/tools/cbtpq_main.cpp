#include <cstddef>
#include <cstdint>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cbtpq/cbtpq.hpp"

int main(int argc, char** argv) {
  CLI::App app{"complete-binary-tree tournament priority queues"};
  app.require_subcommand(1);

  cbtpq::BenchCommand bench_cmd;
  std::vector<std::string> bench_structures(
      std::begin(cbtpq::canonical_structures),
      std::end(cbtpq::canonical_structures));
  std::vector<std::string> bench_dists = {"exponential", "uniform", "biased"};
  CLI::App* bench = app.add_subcommand(
      "bench", "run hold and shrink-to-sort benchmarks, write a CSV");
  bench->add_option("--structure", bench_structures,
                    "structures to benchmark (marin, marin-vs, reduced, super)")
      ->delimiter(',');
  bench->add_option("--n", bench_cmd.params.sizes, "queue sizes")
      ->delimiter(',');
  bench->add_option("--dist", bench_dists,
                    "increment distributions (exponential, uniform, biased)")
      ->delimiter(',');
  bench->add_option("--warmup", bench_cmd.params.warmup,
                    "untimed hold operations per repeat");
  bench->add_option("--ops", bench_cmd.params.timed,
                    "timed hold operations per repeat");
  bench->add_option("--repeats", bench_cmd.params.repeats,
                    "repeats per cell");
  bench->add_option("--seed", bench_cmd.params.seed, "base RNG seed");
  bench->add_option("--out", bench_cmd.out_path, "CSV output path");

  cbtpq::VerifyCommand verify_cmd;
  CLI::App* verify =
      app.add_subcommand("verify", "run invariant and differential suites");
  verify->add_option("--max-n", verify_cmd.max_n,
                     "largest active size to sweep");
  verify->add_option("--ops", verify_cmd.ops,
                     "operations per differential script");
  verify->add_option("--seed", verify_cmd.seed, "base RNG seed");

  cbtpq::SortCommand sort_cmd;
  CLI::App* sort =
      app.add_subcommand("sort", "sort an id,priority file by priority");
  sort->add_option("input", sort_cmd.input_path, "input file of id,priority lines")
      ->required();
  sort->add_option("--out", sort_cmd.out_path,
                   "output path (standard output when omitted)");
  sort->add_flag("--ascending", sort_cmd.ascending,
                 "write smallest priority first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cbtpq::exit_ok : cbtpq::exit_config;
  }

  if (bench->parsed()) {
    bench_cmd.params.structures = std::move(bench_structures);
    bench_cmd.params.distributions.clear();
    for (const std::string& name : bench_dists) {
      const auto dist = cbtpq::parse_distribution(name);
      if (!dist) {
        std::cerr << "cbtpq bench: unknown distribution '" << name << "'\n";
        return cbtpq::exit_config;
      }
      bench_cmd.params.distributions.push_back(*dist);
    }
    return cbtpq::run_bench_command(bench_cmd, std::cout, std::cerr);
  }
  if (verify->parsed())
    return cbtpq::run_verify_command(verify_cmd, std::cout, std::cerr);
  return cbtpq::run_sort_command(sort_cmd, std::cout, std::cerr);
}
