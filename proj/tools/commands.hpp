#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ujssp::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kInapplicable = 3 };

struct GenerateArgs {
  std::string dataset = "uniform";
  std::string scheme = "i";  // or "all"
  std::string type = "I";
  std::size_t n = 20;
  std::size_t count = 1;
  std::uint64_t seed = 1;
  std::string out = ".";
};

struct SolveArgs {
  std::string instance;
  std::string method = "forward";
  bool no_speedups = false;
  std::string ordering = "zorder";
  std::uint64_t seed = 0;
  std::optional<double> time_limit_s;
  std::optional<unsigned> precision_bits;
  std::string trace;
  std::string out;
  std::string refinement = "none";
  std::string solver_cmd;
  bool header = false;
};

struct BenchArgs {
  std::string manifest;
  std::vector<std::string> methods{"forward"};
  double time_limit_s = 60;
  unsigned jobs = 1;
  bool no_speedups = false;
  std::string out;
};

struct VerifyArgs {
  std::size_t seed_battery = 50;
  std::uint64_t seed = 2024;
  std::string fixtures;
};

int run_generate(const GenerateArgs& args);
int run_solve(const SolveArgs& args);
int run_bench(const BenchArgs& args);
int run_verify(const VerifyArgs& args);

}  // namespace ujssp::cli
