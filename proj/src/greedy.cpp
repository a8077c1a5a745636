#include "ujssp/greedy.hpp"

#include <chrono>

namespace ujssp {

std::string_view to_string(SpecialCase c) {
  switch (c) {
    case SpecialCase::IdenticalCosts:
      return "identical-costs";
    case SpecialCase::IdenticalProbabilities:
      return "identical-probabilities";
    case SpecialCase::General:
      break;
  }
  return "general";
}

template <class T>
BasicSolution<T> greedy_select(const BasicInstance<T>& instance, std::vector<T>* objective_path) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = instance.size();
  const auto order = instance.z_order();

  std::vector<bool> chosen(n, false);  // by Z-rank
  std::vector<T> reach_before(n);      // success probability of chosen jobs ahead of rank k
  std::vector<T> tail_reward(n + 1);   // reward of chosen ranks >= k, started fresh
  SolveStats stats;
  T objective = 0;
  if (objective_path) objective_path->assign(1, T(0));

  for (std::size_t size = 0; size < n; ++size) {
    T reach = 1;
    for (std::size_t k = 0; k < n; ++k) {
      reach_before[k] = reach;
      if (chosen[k]) reach *= instance.job(order[k]).pi;
    }
    tail_reward[n] = 0;
    for (std::size_t k = n; k-- > 0;) {
      const auto& j = instance.job(order[k]);
      tail_reward[k] = chosen[k] ? T(j.pi * (j.reward + tail_reward[k + 1])) : tail_reward[k + 1];
    }

    // Inserting rank k scales the chosen suffix by pi_k:
    // gain = reach_before * (pi r + (pi - 1) * suffix) - c.
    std::size_t best_rank = n;
    T best_gain = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (chosen[k]) continue;
      const auto& j = instance.job(order[k]);
      T gain = reach_before[k] * (j.pi * j.reward + (j.pi - 1) * tail_reward[k + 1]) - j.cost;
      ++stats.subsets_evaluated;
      if (best_rank == n) {
        best_rank = k;
        best_gain = std::move(gain);
        continue;
      }
      const bool tie = ScalarTraits<T>::approx_equal(gain, best_gain);
      if ((gain > best_gain && !tie) || (tie && j.id < instance.job(order[best_rank]).id)) {
        best_rank = k;
        best_gain = std::move(gain);
      }
    }
    if (best_rank == n || !ScalarTraits<T>::improves(best_gain)) break;
    chosen[best_rank] = true;
    objective += best_gain;
    if (objective_path) objective_path->push_back(objective);
  }

  std::vector<std::size_t> positions;
  for (std::size_t k = 0; k < n; ++k) {
    if (chosen[k]) positions.push_back(order[k]);
  }
  stats.runtime = std::chrono::steady_clock::now() - start;
  return make_solution(instance, std::move(positions), stats);
}

template <class T>
SpecialCase classify_special_case(const BasicInstance<T>& instance) {
  using std::abs;
  const auto jobs = instance.jobs();
  auto all_close = [&](auto field) {
    for (const auto& j : jobs) {
      if (abs(T(field(j) - field(jobs.front()))) > 1e-12) return false;
    }
    return true;
  };
  if (jobs.empty()) return SpecialCase::IdenticalCosts;
  if (all_close([](const BasicJob<T>& j) -> const T& { return j.cost; })) {
    return SpecialCase::IdenticalCosts;
  }
  if (all_close([](const BasicJob<T>& j) -> const T& { return j.pi; })) {
    return SpecialCase::IdenticalProbabilities;
  }
  return SpecialCase::General;
}

template BasicSolution<double> greedy_select<double>(const BasicInstance<double>&,
                                                     std::vector<double>*);
template BasicSolution<HighPrecisionScalar> greedy_select<HighPrecisionScalar>(
    const BasicInstance<HighPrecisionScalar>&, std::vector<HighPrecisionScalar>*);
template SpecialCase classify_special_case<double>(const BasicInstance<double>&);
template SpecialCase classify_special_case<HighPrecisionScalar>(
    const BasicInstance<HighPrecisionScalar>&);

}  // namespace ujssp
