#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ujssp/core.hpp"
#include "ujssp/instances.hpp"
#include "ujssp/rng.hpp"

namespace ujssp::support {

inline Instance same_pi_instance(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double pi = rng.uniform(0.3, 0.95);
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < n; ++j) {
    const auto r = static_cast<double>(rng.uniform_int(50, 500));
    const auto c = static_cast<double>(rng.uniform_int(1, static_cast<std::int64_t>(pi * r)));
    jobs.push_back(Job{static_cast<int>(j) + 1, pi, c, r});
  }
  return z_order_canonicalize(Instance(std::move(jobs)));
}

// Arbitrary real-valued data, not canonicalized.
inline Instance loose_instance(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < n; ++j) {
    jobs.push_back(Job{static_cast<int>(100 - j), rng.uniform(0.05, 0.99), rng.uniform(0, 60),
                       rng.uniform(10, 300)});
  }
  return Instance(std::move(jobs));
}

struct CliRun {
  int status = -1;
  std::string out;
};

inline CliRun run_cli(const std::string& args) {
  CliRun r;
  const std::string cmd = std::string(UJSSP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int st = ::pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace ujssp::support
