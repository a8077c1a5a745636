#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ujssp/core.hpp"
#include "ujssp/rng.hpp"

namespace ujssp {

// (i) independent probabilities; (ii)-(iv) a drawn joint probability spread
// over the jobs, from low to high.
enum class UniformScheme { I, II, III, IV };

std::string_view to_string(UniformScheme scheme);
// Accepts i..iv (any case) or 1..4.
UniformScheme parse_scheme(std::string_view text);

struct GeneratedUniform {
  Instance instance;
  double joint_probability = 0;  // drawn p for (ii)-(iv), the product for (i)
};

// Canonicalized, deterministic in (n, scheme, seed).
GeneratedUniform generate_uniform_detailed(std::size_t n, UniformScheme scheme, std::uint64_t seed);
Instance generate_uniform(std::size_t n, UniformScheme scheme, std::uint64_t seed);

inline constexpr int kPppMinValue = 2;
inline constexpr int kPppMaxValue = 100;
inline constexpr int kPppRetryBudget = 1000;
inline constexpr int kCostRedrawBudget = 100;

enum class PppType { I, II };

std::string_view to_string(PppType type);
PppType parse_ppp_type(std::string_view text);

struct PppInstance {
  std::vector<int> values;
  PppType type = PppType::I;
  // 0-based positions of one side of a known equal-product split.
  std::optional<std::vector<std::size_t>> planted_split;
};

PppInstance generate_ppp(std::size_t n, PppType type, std::uint64_t seed);

// Groups the prime factors of the product of `left` into `count` integers in
// [2, 100] at random. nullopt when there are fewer prime factors than
// `count`, when the product exceeds 100^count, or when the random grouping
// leaves a value out of range.
std::optional<std::vector<int>> try_complete_planted_split(std::span<const int> left,
                                                           std::size_t count, SplitMix64& rng);

BigInt ppp_product(std::span<const int> values);
// 2 * ceil(log2 W).
unsigned ppp_required_bits(const BigInt& w);
// max(128, required + 64).
unsigned ppp_default_bits(const BigInt& w);

struct PppReduction {
  HpInstance instance;  // job k + 1 is values[k]
  HighPrecisionScalar threshold;
  HighPrecisionScalar sqrt_w;
  BigInt w;
  unsigned bits = 0;
};

// pi = 1/a, r = sqrt(W) (a - 1), c = ln a. `precision_bits` 0 picks the
// default; anything below the separation bound is a PrecisionError.
PppReduction reduce_ppp(const PppInstance& ppp, unsigned precision_bits = 0);

struct College {
  double weight = 0;  // w
  double alpha = 0;   // admission probability
  double cost = 0;    // application cost
};

// r = w a / (1 - a), pi = 1 - a, c = c'. Ids 1..n in input order.
Instance from_csp(std::span<const College> colleges);
std::vector<College> to_csp(const Instance& instance);

}  // namespace ujssp
