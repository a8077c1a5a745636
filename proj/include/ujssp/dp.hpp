#pragma once

#include <cstdint>
#include <vector>

#include "ujssp/core.hpp"

namespace ujssp {

struct DpOptions {
  // Split each row's budget range into strips filled by worker threads.
  bool parallel = false;
  unsigned threads = 0;  // 0: hardware concurrency
  // Upper limit on the take/skip bit plane, n * (C + 1) bits.
  std::uint64_t max_plane_bits = std::uint64_t{1} << 33;
  SolveControl control;
};

// Sum of costs after checking every cost is a non-negative integer
// (InputError otherwise).
std::int64_t integral_budget(const Instance& instance);

// Full value table, g(b, i) for budgets 0..C and Z-ranks i = 1..n + 1 (row
// n + 1 is zero). Memory is (n + 1)(C + 1) doubles; meant for inspection.
struct DpTable {
  std::size_t budgets = 0;  // C + 1
  std::size_t rows = 0;     // n + 1
  std::vector<double> g;

  [[nodiscard]] double at(std::size_t b, std::size_t i) const { return g[(i - 1) * budgets + b]; }
};

DpTable fill_dp_table(const Instance& instance);

// max_b g(b, 1) - b with the subset rebuilt from take/skip bits. Ties between
// budgets go to the smaller one, ties in a cell to skipping the job.
// stats.subsets_evaluated reports the number of table cells.
Solution solve_dp(const Instance& instance, const DpOptions& options = {});

}  // namespace ujssp
