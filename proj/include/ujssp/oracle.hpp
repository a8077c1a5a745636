#pragma once

#include <vector>

#include "ujssp/core.hpp"

namespace ujssp {

inline constexpr std::size_t kBruteForceMaxJobs = 25;

template <class T>
struct BasicOracleResult {
  BasicSolution<T> optimum;
  // Every subset (ids in Z-rule order) within tolerance of the optimum.
  std::vector<std::vector<int>> all_optima;
};

using OracleResult = BasicOracleResult<double>;

// Exhaustive 2^n enumeration. Throws CapacityError above kBruteForceMaxJobs.
template <class T>
BasicOracleResult<T> brute_force(const BasicInstance<T>& instance, const SolveControl& control = {});

// Necessary optimality conditions for instances where r_j * pi_j is the same
// for every job: the subset holds a cheapest job, and after each non-final
// member it holds a cheapest job among the later Z-positions.
template <class T>
bool check_equal_expected_reward_structure(const BasicInstance<T>& instance,
                                           std::span<const int> subset);

extern template BasicOracleResult<double> brute_force<double>(const BasicInstance<double>&,
                                                              const SolveControl&);
extern template BasicOracleResult<HighPrecisionScalar> brute_force<HighPrecisionScalar>(
    const BasicInstance<HighPrecisionScalar>&, const SolveControl&);
extern template bool check_equal_expected_reward_structure<double>(const BasicInstance<double>&,
                                                                   std::span<const int>);
extern template bool check_equal_expected_reward_structure<HighPrecisionScalar>(
    const BasicInstance<HighPrecisionScalar>&, std::span<const int>);

}  // namespace ujssp
