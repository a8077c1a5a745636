#pragma once

#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <utility>

namespace ujssp {

// SplitMix64: a 64-bit counter advanced by the golden-ratio increment and
// passed through a fixed mixer. Output depends only on (seed, draw index), so
// generated instances agree across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : counter_(seed) {}

  std::uint64_t next() noexcept {
    counter_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = counter_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // [0, 1) with 53 random mantissa bits.
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // [lo, hi)
  double uniform(double lo, double hi) noexcept {
    const double x = lo + (hi - lo) * uniform01();
    return x < hi ? x : std::nextafter(hi, lo);
  }

  // Inclusive integer range by rejection, free of modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw = next();
    while (draw >= limit) draw = next();
    return lo + static_cast<std::int64_t>(draw % span);
  }

  // Fisher-Yates.
  template <class It>
  void shuffle(It first, It last) {
    const auto n = std::distance(first, last);
    for (auto i = n - 1; i > 0; --i) {
      const auto k = uniform_int(0, static_cast<std::int64_t>(i));
      using std::swap;
      swap(first[i], first[static_cast<decltype(i)>(k)]);
    }
  }

 private:
  std::uint64_t counter_;
};

}  // namespace ujssp
