#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "ujssp/error.hpp"
#include "ujssp/scalar.hpp"
#include "ujssp/stats.hpp"

namespace ujssp {

template <class T>
struct BasicJob {
  int id = 0;
  T pi{};      // success probability
  T cost{};    // paid on selection
  T reward{};  // earned on successful completion
};

enum class OriginKind { File, Uniform, Ppp };

struct Origin {
  OriginKind kind = OriginKind::File;
  std::string label;  // generation scheme or PPP type
};

// Priority index pi*r/(1-pi); +infinity for pi == 1.
template <class T>
T z_index(const BasicJob<T>& job);

// True when `a` must precede `b` in a Z-rule sequence (strictly larger index).
template <class T>
bool z_precedes(const BasicJob<T>& a, const BasicJob<T>& b);

template <class T>
constexpr unsigned default_precision_bits() {
  if constexpr (std::is_same_v<T, double>) {
    return kFloat64Bits;
  } else {
    return 128;
  }
}

// Immutable job collection. Jobs keep their input order; z_order() gives the
// Z-rule sequence (stable on ties) so every solver can work on instances that
// were never canonicalized.
template <class T>
class BasicInstance {
 public:
  using Scalar = T;
  using Job = BasicJob<T>;

  BasicInstance() = default;
  explicit BasicInstance(std::vector<Job> jobs, unsigned precision_bits = default_precision_bits<T>(),
                         Origin origin = {});

  [[nodiscard]] std::span<const Job> jobs() const noexcept { return jobs_; }
  [[nodiscard]] std::size_t size() const noexcept { return jobs_.size(); }
  [[nodiscard]] bool empty() const noexcept { return jobs_.empty(); }
  [[nodiscard]] const Job& job(std::size_t pos) const { return jobs_.at(pos); }

  [[nodiscard]] bool contains(int id) const { return index_.count(id) != 0; }
  // Throws InputError for unknown ids.
  [[nodiscard]] std::size_t position_of(int id) const;

  [[nodiscard]] std::span<const std::size_t> z_order() const noexcept { return z_order_; }
  [[nodiscard]] std::size_t z_rank(std::size_t pos) const { return z_rank_.at(pos); }

  // Ids are 1..n in input order and input order is the Z-rule order.
  [[nodiscard]] bool is_canonical() const noexcept;

  [[nodiscard]] unsigned precision_bits() const noexcept { return precision_bits_; }
  [[nodiscard]] const Origin& origin() const noexcept { return origin_; }

 private:
  std::vector<Job> jobs_;
  std::vector<std::size_t> z_order_;
  std::vector<std::size_t> z_rank_;
  std::unordered_map<int, std::size_t> index_;
  unsigned precision_bits_ = default_precision_bits<T>();
  Origin origin_;
};

template <class T>
struct BasicSolution {
  std::vector<int> selected;  // Z-rule order
  T objective{};
  T expected_reward{};
  T total_cost{};
  SolveStats stats;
};

using Job = BasicJob<double>;
using Instance = BasicInstance<double>;
using Solution = BasicSolution<double>;
using HpJob = BasicJob<HighPrecisionScalar>;
using HpInstance = BasicInstance<HighPrecisionScalar>;
using HpSolution = BasicSolution<HighPrecisionScalar>;

// Renumbers jobs 1..n along the Z-rule order (ties by input position).
template <class T>
BasicInstance<T> z_order_canonicalize(const BasicInstance<T>& instance);

// Sum of r_k times the success probability of reaching and finishing the k-th
// job, evaluated in the sequence given.
template <class T>
T expected_reward(const BasicInstance<T>& instance, std::span<const int> sequence);

// R(S) - c(S) with S sequenced by the Z-rule.
template <class T>
T net_profit(const BasicInstance<T>& instance, std::span<const int> subset);

// z(S + {job}) - z(S).
template <class T>
T marginal_gain(const BasicInstance<T>& instance, std::span<const int> subset, int job);

// Validates ids (unknown or repeated ids are InputErrors) and returns the
// positions sorted by Z-rank.
template <class T>
std::vector<std::size_t> z_sorted_positions(const BasicInstance<T>& instance,
                                            std::span<const int> ids);

// Expected reward of positions taken in the given order.
template <class T>
T sequence_reward(const BasicInstance<T>& instance, std::span<const std::size_t> positions);

// Builds a Solution from job positions, evaluating every field directly.
template <class T>
BasicSolution<T> make_solution(const BasicInstance<T>& instance,
                               std::vector<std::size_t> positions, SolveStats stats = {});

#define UJSSP_CORE_EXTERN(T)                                                                  \
  extern template T z_index<T>(const BasicJob<T>&);                                         \
  extern template bool z_precedes<T>(const BasicJob<T>&, const BasicJob<T>&);                \
  extern template class BasicInstance<T>;                                                   \
  extern template BasicInstance<T> z_order_canonicalize<T>(const BasicInstance<T>&);        \
  extern template T expected_reward<T>(const BasicInstance<T>&, std::span<const int>);      \
  extern template T net_profit<T>(const BasicInstance<T>&, std::span<const int>);           \
  extern template T marginal_gain<T>(const BasicInstance<T>&, std::span<const int>, int);   \
  extern template std::vector<std::size_t> z_sorted_positions<T>(const BasicInstance<T>&,   \
                                                                 std::span<const int>);     \
  extern template T sequence_reward<T>(const BasicInstance<T>&,                             \
                                       std::span<const std::size_t>);                        \
  extern template BasicSolution<T> make_solution<T>(const BasicInstance<T>&,                \
                                                    std::vector<std::size_t>, SolveStats);

UJSSP_CORE_EXTERN(double)
UJSSP_CORE_EXTERN(HighPrecisionScalar)
#undef UJSSP_CORE_EXTERN

}  // namespace ujssp
