#include "ujssp/scalar.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "ujssp/error.hpp"

namespace ujssp {

namespace {

std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}

unsigned bits_to_digits10(unsigned bits) {
  // ceil(bits * log10(2)); the backend converts back with rounding up, so the
  // effective mantissa never falls below the requested width.
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned bits)
    : lock_(precision_mutex()), previous_digits10_(HighPrecisionScalar::default_precision()) {
  if (bits < 16) throw PrecisionError("precision must be at least 16 bits");
  HighPrecisionScalar::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { HighPrecisionScalar::default_precision(previous_digits10_); }

unsigned current_precision_bits() {
  return static_cast<unsigned>(
      boost::multiprecision::detail::digits10_2_2(HighPrecisionScalar::default_precision()));
}

double working_tolerance(unsigned bits) {
  if (bits <= kFloat64Bits) return ScalarTraits<double>::kRelTol;
  // 16 guard bits below the mantissa width.
  return std::ldexp(1.0, 16 - static_cast<int>(bits));
}

double ScalarTraits<double>::parse(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("not a decimal number: '" + std::string(text) + "'");
  }
  return value;
}

std::string ScalarTraits<double>::format(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

bool ScalarTraits<HighPrecisionScalar>::approx_equal(const HighPrecisionScalar& a,
                                                     const HighPrecisionScalar& b) {
  if (a == b) return true;
  const unsigned bits = std::min(
      boost::multiprecision::detail::digits10_2_2(a.precision()),
      boost::multiprecision::detail::digits10_2_2(b.precision()));
  const HighPrecisionScalar scale = boost::multiprecision::max(
      HighPrecisionScalar(1), boost::multiprecision::max(abs(a), abs(b)));
  return abs(a - b) <= scale * working_tolerance(static_cast<unsigned>(bits));
}

HighPrecisionScalar ScalarTraits<HighPrecisionScalar>::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty decimal string");
  try {
    return HighPrecisionScalar(s);
  } catch (const std::exception&) {
    throw ParseError("not a decimal number: '" + s + "'");
  }
}

std::string ScalarTraits<HighPrecisionScalar>::format(const HighPrecisionScalar& v) {
  const auto bits = boost::multiprecision::detail::digits10_2_2(v.precision());
  const auto digits = static_cast<std::streamsize>(std::ceil(bits * 0.30102999566398120)) + 2;
  return v.str(digits, std::ios_base::scientific);
}

}  // namespace ujssp
