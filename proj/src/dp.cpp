#include "ujssp/dp.hpp"

#include <algorithm>
#include <barrier>
#include <chrono>
#include <cmath>
#include <thread>

namespace ujssp {

std::int64_t integral_budget(const Instance& instance) {
  std::int64_t total = 0;
  for (const Job& j : instance.jobs()) {
    if (!std::isfinite(j.cost) || j.cost < 0 || std::floor(j.cost) != j.cost) {
      throw InputError("job " + std::to_string(j.id) + " has non-integer cost " +
                       ScalarTraits<double>::format(j.cost) + "; the budget DP needs integer costs");
    }
    if (j.cost > 9.0e15) throw CapacityError("cost too large for the budget DP");
    total += static_cast<std::int64_t>(j.cost);
  }
  return total;
}

DpTable fill_dp_table(const Instance& instance) {
  const auto width = static_cast<std::size_t>(integral_budget(instance)) + 1;
  const std::size_t n = instance.size();
  if (static_cast<double>(width) * static_cast<double>(n + 1) > 2.0e8) {
    throw CapacityError("full DP table would exceed 2e8 cells");
  }
  const auto order = instance.z_order();
  DpTable t{width, n + 1, std::vector<double>((n + 1) * width, 0.0)};
  for (std::size_t i = n; i-- > 0;) {
    const Job& j = instance.job(order[i]);
    const auto c = static_cast<std::size_t>(j.cost);
    const double* next = &t.g[(i + 1) * width];
    double* row = &t.g[i * width];
    for (std::size_t b = 0; b < width; ++b) {
      row[b] = next[b];
      if (b >= c) row[b] = std::max(row[b], j.pi * (j.reward + next[b - c]));
    }
  }
  return t;
}

Solution solve_dp(const Instance& instance, const DpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = instance.size();
  const auto width = static_cast<std::size_t>(integral_budget(instance)) + 1;
  const std::size_t words = (width + 63) / 64;
  if (static_cast<double>(n) * static_cast<double>(words) * 64.0 >
      static_cast<double>(options.max_plane_bits)) {
    throw CapacityError("budget DP needs " + std::to_string(n) + " x " + std::to_string(width) +
                        " cells, above the configured limit");
  }
  const auto order = instance.z_order();
  std::vector<std::int64_t> cost(n);
  for (std::size_t i = 0; i < n; ++i) cost[i] = static_cast<std::int64_t>(instance.job(order[i]).cost);

  std::vector<std::uint64_t> plane(n * words, 0);
  std::vector<double> next(width, 0.0);  // g(., i + 1)
  std::vector<double> cur(width, 0.0);

  auto fill = [&](std::size_t i, std::size_t b0, std::size_t b1) {
    const Job& j = instance.job(order[i]);
    const auto c = static_cast<std::size_t>(cost[i]);
    std::uint64_t* bits = plane.data() + i * words;
    for (std::size_t b = b0; b < b1; ++b) {
      const double skip = next[b];
      if (b >= c) {
        const double take = j.pi * (j.reward + next[b - c]);
        if (take > skip) {
          cur[b] = take;
          bits[b >> 6] |= std::uint64_t{1} << (b & 63);
          continue;
        }
      }
      cur[b] = skip;
    }
  };

  SolveStats stats;
  stats.subsets_evaluated = static_cast<std::uint64_t>(n) * width;
  auto deadline = [&] {
    stats.runtime = std::chrono::steady_clock::now() - start;
    return DeadlineExceeded(stats);
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(words)));
  if (!options.parallel || threads == 1 || n == 0) {
    for (std::size_t i = n; i-- > 0;) {
      if (options.control.expired()) throw deadline();
      fill(i, 0, width);
      cur.swap(next);
    }
  } else {
    // Strips on 64-budget boundaries so no two threads share a bit-plane word.
    const std::size_t per = (words + threads - 1) / threads;
    std::ptrdiff_t row = static_cast<std::ptrdiff_t>(n) - 1;
    bool stop = options.control.expired();
    std::barrier sync(static_cast<std::ptrdiff_t>(threads), [&]() noexcept {
      cur.swap(next);
      --row;
      if (row >= 0 && options.control.expired()) stop = true;
    });
    auto worker = [&](unsigned t) {
      const std::size_t b0 = std::min(width, t * per * 64);
      const std::size_t b1 = std::min(width, (t + 1) * per * 64);
      while (row >= 0 && !stop) {
        fill(static_cast<std::size_t>(row), b0, b1);
        sync.arrive_and_wait();
      }
    };
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
      worker(0);
    }
    if (stop) throw deadline();
  }

  // next now holds g(., 1).
  std::size_t best_b = 0;
  double best = next[0];
  for (std::size_t b = 1; b < width; ++b) {
    const double v = next[b] - static_cast<double>(b);
    if (v > best) {
      best = v;
      best_b = b;
    }
  }
  std::vector<std::size_t> positions;
  std::size_t b = best_b;
  for (std::size_t i = 0; i < n; ++i) {
    if (plane[i * words + (b >> 6)] >> (b & 63) & 1U) {
      positions.push_back(order[i]);
      b -= static_cast<std::size_t>(cost[i]);
    }
  }
  stats.runtime = std::chrono::steady_clock::now() - start;
  return make_solution(instance, std::move(positions), stats);
}

}  // namespace ujssp
