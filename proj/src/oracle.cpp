#include "ujssp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>

namespace ujssp {

namespace {

template <class T>
std::vector<std::size_t> mask_positions(const BasicInstance<T>& instance, std::uint64_t mask) {
  std::vector<std::size_t> positions;
  const auto order = instance.z_order();
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (mask >> k & 1U) positions.push_back(order[k]);
  }
  return positions;
}

}  // namespace

template <class T>
BasicOracleResult<T> brute_force(const BasicInstance<T>& instance, const SolveControl& control) {
  const std::size_t n = instance.size();
  if (n > kBruteForceMaxJobs) {
    throw CapacityError("brute force is limited to " + std::to_string(kBruteForceMaxJobs) +
                        " jobs, instance has " + std::to_string(n));
  }
  const auto start = std::chrono::steady_clock::now();
  const auto order = instance.z_order();

  struct Entry {
    std::uint64_t mask;
    T value;
  };
  std::vector<Entry> near_best;
  T best = 0;  // the empty subset
  near_best.push_back({0, T(0)});

  SolveStats stats;
  stats.subsets_evaluated = 1;
  T cost = 0;
  std::uint64_t gray = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    if ((i & 0xFFFF) == 0 && control.expired()) throw DeadlineExceeded(stats);
    const auto flip = static_cast<unsigned>(std::countr_zero(i));
    gray ^= std::uint64_t{1} << flip;
    const auto& flipped = instance.job(order[flip]);
    if (gray >> flip & 1U) {
      cost += flipped.cost;
    } else {
      cost -= flipped.cost;
    }
    // Reward is recomputed from scratch; cost is accumulated along the code.
    T reward = 0;
    T reach = 1;
    for (std::uint64_t rest = gray; rest != 0; rest &= rest - 1) {
      const auto& j = instance.job(order[static_cast<std::size_t>(std::countr_zero(rest))]);
      reach *= j.pi;
      reward += j.reward * reach;
    }
    T value = reward - cost;
    ++stats.subsets_evaluated;

    if (value > best) {
      best = value;
      std::erase_if(near_best, [&](const Entry& e) {
        return !ScalarTraits<T>::approx_equal(e.value, best);
      });
    }
    if (ScalarTraits<T>::approx_equal(value, best)) near_best.push_back({gray, std::move(value)});
  }

  std::sort(near_best.begin(), near_best.end(), [](const Entry& a, const Entry& b) {
    const int pa = std::popcount(a.mask);
    const int pb = std::popcount(b.mask);
    return pa != pb ? pa < pb : a.mask < b.mask;
  });

  // Accumulated costs drift; report the winner evaluated directly.
  const Entry* winner = &near_best.front();
  for (const Entry& e : near_best) {
    if (e.value > winner->value && !ScalarTraits<T>::approx_equal(e.value, winner->value)) {
      winner = &e;
    }
  }

  BasicOracleResult<T> result;
  stats.runtime = std::chrono::steady_clock::now() - start;
  result.optimum = make_solution(instance, mask_positions(instance, winner->mask), stats);
  for (const Entry& e : near_best) {
    std::vector<int> ids;
    for (std::size_t pos : mask_positions(instance, e.mask)) ids.push_back(instance.job(pos).id);
    result.all_optima.push_back(std::move(ids));
  }
  return result;
}

template <class T>
bool check_equal_expected_reward_structure(const BasicInstance<T>& instance,
                                           std::span<const int> subset) {
  const std::size_t n = instance.size();
  if (n == 0) return subset.empty();
  const T common = instance.job(0).reward * instance.job(0).pi;
  for (const auto& j : instance.jobs()) {
    if (!ScalarTraits<T>::approx_equal(T(j.reward * j.pi), common)) {
      throw InputError("jobs do not share a common expected reward r*pi");
    }
  }
  const auto positions = z_sorted_positions(instance, subset);
  if (positions.empty()) return true;

  const auto order = instance.z_order();
  std::vector<bool> chosen(n, false);
  for (std::size_t pos : positions) chosen[instance.z_rank(pos)] = true;

  // Cheapest cost over Z-ranks >= k, and whether the subset holds a job at that
  // cost within the same range.
  auto holds_cheapest_from = [&](std::size_t first_rank) {
    if (first_rank >= n) return true;
    T cheapest = instance.job(order[first_rank]).cost;
    for (std::size_t k = first_rank + 1; k < n; ++k) {
      cheapest = std::min<T>(cheapest, instance.job(order[k]).cost);
    }
    for (std::size_t k = first_rank; k < n; ++k) {
      if (chosen[k] && ScalarTraits<T>::approx_equal(instance.job(order[k]).cost, cheapest)) {
        return true;
      }
    }
    return false;
  };

  if (!holds_cheapest_from(0)) return false;
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
    if (!holds_cheapest_from(instance.z_rank(positions[i]) + 1)) return false;
  }
  return true;
}

template BasicOracleResult<double> brute_force<double>(const BasicInstance<double>&,
                                                       const SolveControl&);
template BasicOracleResult<HighPrecisionScalar> brute_force<HighPrecisionScalar>(
    const BasicInstance<HighPrecisionScalar>&, const SolveControl&);
template bool check_equal_expected_reward_structure<double>(const BasicInstance<double>&,
                                                            std::span<const int>);
template bool check_equal_expected_reward_structure<HighPrecisionScalar>(
    const BasicInstance<HighPrecisionScalar>&, std::span<const int>);

}  // namespace ujssp
