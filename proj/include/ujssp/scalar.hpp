#pragma once

#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace ujssp {

using HighPrecisionScalar = boost::multiprecision::mpfr_float;
using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

inline constexpr unsigned kFloat64Bits = 53;

// The MPFR backend keeps its working precision in a process-wide default, so
// high-precision work runs inside a PrecisionScope. Scopes nest on one thread
// and serialize across threads.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned previous_digits10_;
};

// Mantissa bits currently in effect for newly created HighPrecisionScalars.
unsigned current_precision_bits();

// Value comparison rules. Float64 uses a relative tolerance with an absolute
// floor; high precision compares dominance exactly and only uses a
// working-precision tolerance when two independently rounded routes meet.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static constexpr double kRelTol = 1e-9;
  static constexpr double kAbsTol = 1e-12;
  static constexpr double kCoincideTol = 1e-12;
  static constexpr double kParallelTol = 1e-15;
  static constexpr double kGainTol = 1e-12;

  static bool approx_equal(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= std::max(kAbsTol, kRelTol * scale);
  }
  static bool coincide(double a, double b) {
    return std::abs(a - b) <= kCoincideTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  }
  static bool parallel(double a, double b) {
    return std::abs(a - b) <= kParallelTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  }
  static bool improves(double gain) { return gain > kGainTol; }
  static bool is_finite(double v) { return std::isfinite(v); }
  static double infinity() { return std::numeric_limits<double>::infinity(); }
  static double to_double(double v) { return v; }
  static double parse(std::string_view text);
  static std::string format(double v);
};

template <>
struct ScalarTraits<HighPrecisionScalar> {
  static constexpr bool kExact = true;

  static bool approx_equal(const HighPrecisionScalar& a, const HighPrecisionScalar& b);
  static bool coincide(const HighPrecisionScalar& a, const HighPrecisionScalar& b) { return a == b; }
  static bool parallel(const HighPrecisionScalar& a, const HighPrecisionScalar& b) { return a == b; }
  static bool improves(const HighPrecisionScalar& gain) { return gain > 0; }
  static bool is_finite(const HighPrecisionScalar& v) { return boost::multiprecision::isfinite(v); }
  static HighPrecisionScalar infinity() {
    return std::numeric_limits<HighPrecisionScalar>::infinity();
  }
  static double to_double(const HighPrecisionScalar& v) { return v.convert_to<double>(); }
  // Parses a decimal string at the current scope precision.
  static HighPrecisionScalar parse(std::string_view text);
  // Enough significant digits to round-trip at the value's own precision.
  static std::string format(const HighPrecisionScalar& v);
};

// Relative tolerance used by cross-method checks at a given precision.
double working_tolerance(unsigned bits);

}  // namespace ujssp
