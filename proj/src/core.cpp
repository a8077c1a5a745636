#include "ujssp/core.hpp"

#include <algorithm>
#include <numeric>

namespace ujssp {

template <class T>
T z_index(const BasicJob<T>& job) {
  if (job.pi == 1) return ScalarTraits<T>::infinity();
  return T(job.pi * job.reward / (1 - job.pi));
}

template <class T>
bool z_precedes(const BasicJob<T>& a, const BasicJob<T>& b) {
  const bool a_sure = a.pi == 1;
  const bool b_sure = b.pi == 1;
  if (a_sure || b_sure) return a_sure && !b_sure;
  return z_index(a) > z_index(b);
}

template <class T>
BasicInstance<T>::BasicInstance(std::vector<Job> jobs, unsigned precision_bits, Origin origin)
    : jobs_(std::move(jobs)), precision_bits_(precision_bits), origin_(std::move(origin)) {
  index_.reserve(jobs_.size());
  for (std::size_t pos = 0; pos < jobs_.size(); ++pos) {
    const Job& j = jobs_[pos];
    const std::string where = "job " + std::to_string(j.id);
    if (!ScalarTraits<T>::is_finite(j.pi) || j.pi < 0 || j.pi > 1) {
      throw InputError(where + ": success probability must lie in [0,1]");
    }
    if (!ScalarTraits<T>::is_finite(j.cost) || j.cost < 0) {
      throw InputError(where + ": cost must be finite and nonnegative");
    }
    if (!ScalarTraits<T>::is_finite(j.reward) || j.reward < 0) {
      throw InputError(where + ": reward must be finite and nonnegative");
    }
    if (!index_.emplace(j.id, pos).second) throw InputError(where + ": duplicate id");
  }

  z_order_.resize(jobs_.size());
  std::iota(z_order_.begin(), z_order_.end(), std::size_t{0});
  std::stable_sort(z_order_.begin(), z_order_.end(), [this](std::size_t a, std::size_t b) {
    return z_precedes(jobs_[a], jobs_[b]);
  });
  z_rank_.resize(jobs_.size());
  for (std::size_t r = 0; r < z_order_.size(); ++r) z_rank_[z_order_[r]] = r;
}

template <class T>
std::size_t BasicInstance<T>::position_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown job id " + std::to_string(id));
  return it->second;
}

template <class T>
bool BasicInstance<T>::is_canonical() const noexcept {
  for (std::size_t pos = 0; pos < jobs_.size(); ++pos) {
    if (jobs_[pos].id != static_cast<int>(pos) + 1 || z_order_[pos] != pos) return false;
  }
  return true;
}

template <class T>
BasicInstance<T> z_order_canonicalize(const BasicInstance<T>& instance) {
  std::vector<BasicJob<T>> jobs;
  jobs.reserve(instance.size());
  int next_id = 1;
  for (std::size_t pos : instance.z_order()) {
    BasicJob<T> j = instance.job(pos);
    j.id = next_id++;
    jobs.push_back(std::move(j));
  }
  return BasicInstance<T>(std::move(jobs), instance.precision_bits(), instance.origin());
}

template <class T>
T sequence_reward(const BasicInstance<T>& instance, std::span<const std::size_t> positions) {
  T reward = 0;
  T reach = 1;
  for (std::size_t pos : positions) {
    const auto& j = instance.job(pos);
    reach *= j.pi;
    reward += j.reward * reach;
  }
  return reward;
}

template <class T>
std::vector<std::size_t> z_sorted_positions(const BasicInstance<T>& instance,
                                            std::span<const int> ids) {
  std::vector<std::size_t> positions;
  positions.reserve(ids.size());
  for (int id : ids) positions.push_back(instance.position_of(id));
  std::sort(positions.begin(), positions.end(), [&](std::size_t a, std::size_t b) {
    return instance.z_rank(a) < instance.z_rank(b);
  });
  if (std::adjacent_find(positions.begin(), positions.end()) != positions.end()) {
    throw InputError("job listed twice in subset");
  }
  return positions;
}

template <class T>
T expected_reward(const BasicInstance<T>& instance, std::span<const int> sequence) {
  std::vector<std::size_t> positions;
  positions.reserve(sequence.size());
  for (int id : sequence) positions.push_back(instance.position_of(id));
  auto sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("job listed twice in sequence");
  }
  return sequence_reward(instance, std::span<const std::size_t>(positions));
}

template <class T>
T net_profit(const BasicInstance<T>& instance, std::span<const int> subset) {
  const auto positions = z_sorted_positions(instance, subset);
  T cost = 0;
  for (std::size_t pos : positions) cost += instance.job(pos).cost;
  return T(sequence_reward(instance, std::span<const std::size_t>(positions)) - cost);
}

template <class T>
T marginal_gain(const BasicInstance<T>& instance, std::span<const int> subset, int job) {
  if (std::find(subset.begin(), subset.end(), job) != subset.end()) {
    throw InputError("job " + std::to_string(job) + " is already in the subset");
  }
  (void)instance.position_of(job);
  std::vector<int> extended(subset.begin(), subset.end());
  extended.push_back(job);
  return T(net_profit(instance, std::span<const int>(extended)) - net_profit(instance, subset));
}

template <class T>
BasicSolution<T> make_solution(const BasicInstance<T>& instance,
                               std::vector<std::size_t> positions, SolveStats stats) {
  std::sort(positions.begin(), positions.end(), [&](std::size_t a, std::size_t b) {
    return instance.z_rank(a) < instance.z_rank(b);
  });
  BasicSolution<T> sol;
  sol.selected.reserve(positions.size());
  sol.total_cost = 0;
  for (std::size_t pos : positions) {
    sol.selected.push_back(instance.job(pos).id);
    sol.total_cost += instance.job(pos).cost;
  }
  sol.expected_reward = sequence_reward(instance, std::span<const std::size_t>(positions));
  sol.objective = sol.expected_reward - sol.total_cost;
  sol.stats = stats;
  return sol;
}

#define UJSSP_CORE_INSTANTIATE(T)                                                            \
  template T z_index<T>(const BasicJob<T>&);                                                 \
  template bool z_precedes<T>(const BasicJob<T>&, const BasicJob<T>&);                       \
  template class BasicInstance<T>;                                                           \
  template BasicInstance<T> z_order_canonicalize<T>(const BasicInstance<T>&);                \
  template T expected_reward<T>(const BasicInstance<T>&, std::span<const int>);              \
  template T net_profit<T>(const BasicInstance<T>&, std::span<const int>);                   \
  template T marginal_gain<T>(const BasicInstance<T>&, std::span<const int>, int);           \
  template std::vector<std::size_t> z_sorted_positions<T>(const BasicInstance<T>&,           \
                                                          std::span<const int>);             \
  template T sequence_reward<T>(const BasicInstance<T>&, std::span<const std::size_t>);      \
  template BasicSolution<T> make_solution<T>(const BasicInstance<T>&, std::vector<std::size_t>, \
                                             SolveStats);

UJSSP_CORE_INSTANTIATE(double)
UJSSP_CORE_INSTANTIATE(HighPrecisionScalar)

}  // namespace ujssp
