#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ujssp/error.hpp"

using namespace ujssp::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact and heuristic solvers for unreliable job selection and sequencing"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write random instances and a manifest");
  generate->add_option("--dataset", gen.dataset, "uniform | ppp")
      ->check(CLI::IsMember({"uniform", "ppp"}));
  generate->add_option("--scheme", gen.scheme, "i | ii | iii | iv | all (uniform)");
  generate->add_option("--type", gen.type, "I | II (ppp)");
  generate->add_option("--n", gen.n, "jobs per instance")->required();
  generate->add_option("--count", gen.count, "instances per scheme or type");
  generate->add_option("--seed", gen.seed, "base seed; instance k uses seed + k");
  generate->add_option("--out", gen.out, "output directory");

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "solve one instance file");
  solve->add_option("instance", sol.instance, "instance or PPP JSON file")->required();
  solve->add_option("--method", sol.method,
                    "forward | backward | dp | greedy | oracle | assignment-ub | "
                    "identical-prob | ppp | milp-export | milp");
  solve->add_flag("--no-speedups", sol.no_speedups, "disable the stepwise extension filter");
  solve->add_option("--ordering", sol.ordering, "zorder | ascending | descending | random");
  solve->add_option("--seed", sol.seed, "seed for --ordering random");
  solve->add_option("--time-limit-s", sol.time_limit_s, "cooperative time limit");
  solve->add_option("--precision-bits", sol.precision_bits, "solve in high precision");
  solve->add_option("--trace", sol.trace, "per-step NDJSON trace file, '-' for stderr");
  solve->add_option("--out", sol.out, "LP file for milp-export");
  solve->add_option("--refinement", sol.refinement, "none | pairwise | bigm")
      ->check(CLI::IsMember({"none", "pairwise", "bigm"}));
  solve->add_option("--solver-cmd", sol.solver_cmd, "external LP solver wrapper")
      ->envname("UJSSP_SOLVER_CMD");
  solve->add_flag("--header", sol.header, "print the CSV header first");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "run methods over a manifest");
  bench_cmd->add_option("manifest", bench.manifest, "manifest CSV")->required();
  bench_cmd->add_option("--method", bench.methods, "methods, repeatable or comma separated")
      ->delimiter(',');
  bench_cmd->add_option("--time-limit-s", bench.time_limit_s, "per-instance limit");
  bench_cmd->add_option("--jobs", bench.jobs, "concurrent solves")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--no-speedups", bench.no_speedups, "disable the stepwise extension filter");
  bench_cmd->add_option("--out", bench.out, "results CSV (default stdout)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "regression fixtures and a random oracle battery");
  verify->add_option("--seed-battery", ver.seed_battery, "random instances compared to brute force");
  verify->add_option("--seed", ver.seed, "battery seed");
  verify->add_option("--fixtures", ver.fixtures, "directory overriding the embedded fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*solve) return run_solve(sol);
    if (*bench_cmd) return run_bench(bench);
    if (*verify) return run_verify(ver);
  } catch (const ujssp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ujssp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}
