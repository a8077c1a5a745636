#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ujssp/core.hpp"
#include "ujssp/envelope.hpp"
#include "ujssp/instances.hpp"

namespace ujssp {

enum class Direction { Forward, Backward };

struct Ordering {
  enum class Kind { ZOrder, Ascending, Descending, Random };
  Kind kind = Kind::ZOrder;
  std::uint64_t seed = 0;  // Random only
};

std::string_view to_string(Ordering::Kind kind);
// zorder | ascending | descending | random
Ordering::Kind parse_ordering(std::string_view text);

struct StepwiseConfig {
  Direction direction = Direction::Forward;
  bool speedups_enabled = true;
  Ordering ordering;
  SolveControl control;
};

// Processing sequence of positions. Anything but ZOrder needs all Z indices
// equal (within tolerance), otherwise InputError. Ascending and Descending
// sort by reward, stable.
template <class T>
std::vector<std::size_t> processing_order(const BasicInstance<T>& instance,
                                          const Ordering& ordering);

template <class T>
struct WinningRange {
  T lo;
  T hi;
};

// Whether a candidate winning on `range` should still be extended with `job`.
// Forward works on downstream reward r and drops ranges below pi*r; backward
// works on upstream probability p and drops ranges above pi.
template <class T>
bool extend_filter_speedup(const WinningRange<T>& range, const BasicJob<T>& job,
                           Direction direction);

template <class T>
BasicSolution<T> solve_forward(const BasicInstance<T>& instance, const StepwiseConfig& config = {});

template <class T>
BasicSolution<T> solve_backward(const BasicInstance<T>& instance, const StepwiseConfig& config = {});

// Dispatches on config.direction.
template <class T>
BasicSolution<T> solve_stepwise(const BasicInstance<T>& instance, const StepwiseConfig& config);

// Parent-pointer storage for candidate subsets: node k stands for
// parent(k) + {position(k)}; node 0 is the empty set. Envelope owners are
// node indices.
class CandidateForest {
 public:
  static constexpr std::uint32_t kRoot = 0;
  static constexpr std::uint32_t kNone = 0xFFFFFFFFU;

  CandidateForest() { nodes_.push_back({kNone, 0}); }

  std::uint32_t add(std::uint32_t parent, std::size_t position);
  // Root-to-node positions.
  [[nodiscard]] std::vector<std::size_t> positions(std::uint32_t node) const;
  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

  // Drops nodes no envelope line descends from and renumbers the rest.
  template <class Env>
  void compact(Env& envelope) {
    std::vector<bool> live(nodes_.size(), false);
    live[kRoot] = true;
    for (const auto& line : envelope.lines()) {
      for (std::uint32_t u = line.owner; u != kNone && !live[u]; u = nodes_[u].parent) live[u] = true;
    }
    std::vector<std::uint32_t> remap(nodes_.size(), kNone);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!live[i]) continue;
      const Node n = nodes_[i];
      remap[i] = next;
      nodes_[next++] = {n.parent == kNone ? kNone : remap[n.parent], n.position};
    }
    nodes_.resize(next);
    envelope.remap_owners([&](std::uint32_t u) { return remap[u]; });
  }

 private:
  struct Node {
    std::uint32_t parent;
    std::uint32_t position;
  };
  std::vector<Node> nodes_;
};

// Line of a candidate in the reduced product-partition form:
// value(x) = -ln P - sqrt(W) x / P, P kept exactly.
struct PppLine {
  BigInt product = 1;
  HighPrecisionScalar log_product = 0;
  std::uint32_t owner = 0;
};

class PppPolicy {
 public:
  using Scalar = HighPrecisionScalar;
  using Line = PppLine;

  explicit PppPolicy(HighPrecisionScalar sqrt_w = 1) : sqrt_w_(std::move(sqrt_w)) {}

  [[nodiscard]] int compare_slope(const Line& a, const Line& b) const {
    return a.product < b.product ? -1 : (b.product < a.product ? 1 : 0);
  }
  // Equal products give the same line.
  [[nodiscard]] bool keeps_over(const Line&, const Line&) const { return true; }
  [[nodiscard]] Scalar crossing(const Line& flatter, const Line& steeper) const;
  [[nodiscard]] Scalar value(const Line& line, const Scalar& x) const;
  [[nodiscard]] bool exceeds(const Scalar& a, const Scalar& b) const { return a > b; }
  void validate(const Line& line) const;
  [[nodiscard]] std::string csv_row(const Line& line) const;

  [[nodiscard]] const HighPrecisionScalar& sqrt_w() const noexcept { return sqrt_w_; }

 private:
  HighPrecisionScalar sqrt_w_;
};

struct PppSolveOptions {
  Ordering ordering;
  bool speedups_enabled = true;
  unsigned precision_bits = 0;  // 0: default for the instance
  SolveControl control;
};

struct PppSolveResult {
  HpSolution solution;              // ids refer to the reduced instance
  std::vector<std::size_t> chosen;  // positions in ppp.values, ascending
  std::vector<std::size_t> rest;
  BigInt chosen_product;
  BigInt rest_product;
  HighPrecisionScalar threshold;
  unsigned bits = 0;

  [[nodiscard]] bool perfect() const { return chosen_product == rest_product; }
};

PppSolveResult solve_ppp_mode(const PppInstance& ppp, const PppSolveOptions& options = {});

#define UJSSP_STEPWISE_EXTERN(T)                                                               \
  extern template std::vector<std::size_t> processing_order<T>(const BasicInstance<T>&,      \
                                                               const Ordering&);             \
  extern template bool extend_filter_speedup<T>(const WinningRange<T>&, const BasicJob<T>&,  \
                                                Direction);                                  \
  extern template BasicSolution<T> solve_forward<T>(const BasicInstance<T>&,                 \
                                                    const StepwiseConfig&);                  \
  extern template BasicSolution<T> solve_backward<T>(const BasicInstance<T>&,                \
                                                     const StepwiseConfig&);                 \
  extern template BasicSolution<T> solve_stepwise<T>(const BasicInstance<T>&,                \
                                                     const StepwiseConfig&);

UJSSP_STEPWISE_EXTERN(double)
UJSSP_STEPWISE_EXTERN(HighPrecisionScalar)
#undef UJSSP_STEPWISE_EXTERN

}  // namespace ujssp
