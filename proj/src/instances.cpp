#include "ujssp/instances.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

namespace ujssp {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

constexpr std::array<int, 25> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                         43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

struct SchemeRange {
  double lo;
  double hi;
};

SchemeRange joint_range(UniformScheme scheme) {
  switch (scheme) {
    case UniformScheme::II:
      return {0.01, 0.10};
    case UniformScheme::III:
      return {0.10, 0.40};
    case UniformScheme::IV:
      return {0.40, 0.90};
    case UniformScheme::I:
      break;
  }
  return {0.01, 0.99};  // per job
}

}  // namespace

std::string_view to_string(UniformScheme scheme) {
  switch (scheme) {
    case UniformScheme::II:
      return "ii";
    case UniformScheme::III:
      return "iii";
    case UniformScheme::IV:
      return "iv";
    case UniformScheme::I:
      break;
  }
  return "i";
}

UniformScheme parse_scheme(std::string_view text) {
  const std::string t = lower(text);
  if (t == "i" || t == "1") return UniformScheme::I;
  if (t == "ii" || t == "2") return UniformScheme::II;
  if (t == "iii" || t == "3") return UniformScheme::III;
  if (t == "iv" || t == "4") return UniformScheme::IV;
  throw InputError("unknown scheme '" + std::string(text) + "'");
}

GeneratedUniform generate_uniform_detailed(std::size_t n, UniformScheme scheme, std::uint64_t seed) {
  if (n == 0) throw InputError("generate_uniform needs n >= 1");
  SplitMix64 rng(seed);
  const SchemeRange range = joint_range(scheme);

  std::vector<double> pi(n);
  double joint = 1;
  if (scheme == UniformScheme::I) {
    for (double& p : pi) {
      p = rng.uniform(range.lo, range.hi);
      joint *= p;
    }
  } else {
    joint = rng.uniform(range.lo, range.hi);
    std::vector<double> weight(n);
    double total = 0;
    for (double& w : weight) {
      w = rng.uniform(1, 1000);
      total += w;
    }
    const double log_joint = std::log(joint);
    for (std::size_t j = 0; j < n; ++j) pi[j] = std::exp(log_joint * weight[j] / total);
  }

  std::vector<Job> jobs(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto reward = rng.uniform_int(50, 500);
    auto lo = static_cast<std::int64_t>(std::ceil(joint * static_cast<double>(reward)));
    auto hi = static_cast<std::int64_t>(std::floor(pi[j] * static_cast<double>(reward)));
    for (int tries = 0; lo > hi && tries < kCostRedrawBudget; ++tries) {
      reward = rng.uniform_int(50, 500);
      lo = static_cast<std::int64_t>(std::ceil(joint * static_cast<double>(reward)));
      hi = static_cast<std::int64_t>(std::floor(pi[j] * static_cast<double>(reward)));
    }
    const std::int64_t cost = lo > hi ? hi : rng.uniform_int(lo, hi);
    jobs[j] = Job{static_cast<int>(j) + 1, pi[j], static_cast<double>(cost),
                  static_cast<double>(reward)};
  }
  Instance raw(std::move(jobs), kFloat64Bits,
               Origin{OriginKind::Uniform, std::string(to_string(scheme))});
  return {z_order_canonicalize(raw), joint};
}

Instance generate_uniform(std::size_t n, UniformScheme scheme, std::uint64_t seed) {
  return generate_uniform_detailed(n, scheme, seed).instance;
}

std::string_view to_string(PppType type) { return type == PppType::I ? "I" : "II"; }

PppType parse_ppp_type(std::string_view text) {
  const std::string t = lower(text);
  if (t == "i" || t == "1") return PppType::I;
  if (t == "ii" || t == "2") return PppType::II;
  throw InputError("unknown PPP type '" + std::string(text) + "'");
}

std::optional<std::vector<int>> try_complete_planted_split(std::span<const int> left,
                                                           std::size_t count, SplitMix64& rng) {
  if (count == 0) return std::nullopt;
  std::vector<int> primes;
  for (int a : left) {
    if (a < kPppMinValue || a > kPppMaxValue) throw InputError("PPP values lie in [2, 100]");
    for (int p : kPrimes) {
      while (a % p == 0) {
        primes.push_back(p);
        a /= p;
      }
    }
  }
  if (primes.size() < count) return std::nullopt;
  BigInt limit = 1;
  for (std::size_t i = 0; i < count; ++i) limit *= kPppMaxValue;
  if (ppp_product(left) > limit) return std::nullopt;

  rng.shuffle(primes.begin(), primes.end());
  std::vector<int> bins(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(count));
  std::vector<int> rest(primes.begin() + static_cast<std::ptrdiff_t>(count), primes.end());
  std::sort(rest.begin(), rest.end(), std::greater<>());
  std::vector<std::size_t> fits;
  for (int p : rest) {
    fits.clear();
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (bins[b] * p <= kPppMaxValue) fits.push_back(b);
    }
    if (fits.empty()) return std::nullopt;
    const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(fits.size()) - 1);
    bins[fits[static_cast<std::size_t>(pick)]] *= p;
  }
  return bins;
}

PppInstance generate_ppp(std::size_t n, PppType type, std::uint64_t seed) {
  if (n < 2) throw InputError("generate_ppp needs n >= 2");
  SplitMix64 rng(seed);
  PppInstance out;
  out.type = type;
  if (type == PppType::I) {
    for (std::size_t i = 0; i < n; ++i) {
      out.values.push_back(static_cast<int>(rng.uniform_int(kPppMinValue, kPppMaxValue)));
    }
    return out;
  }
  for (int attempt = 0; attempt < kPppRetryBudget; ++attempt) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(n) - 1));
    std::vector<int> left(j);
    for (int& a : left) a = static_cast<int>(rng.uniform_int(kPppMinValue, kPppMaxValue));
    auto right = try_complete_planted_split(left, n - j, rng);
    if (!right) continue;
    out.values = std::move(left);
    out.values.insert(out.values.end(), right->begin(), right->end());
    std::vector<std::size_t> split(j);
    for (std::size_t i = 0; i < j; ++i) split[i] = i;
    out.planted_split = std::move(split);
    return out;
  }
  throw GenerationError("no Type II instance with n = " + std::to_string(n) + " after " +
                        std::to_string(kPppRetryBudget) + " attempts (seed " +
                        std::to_string(seed) + ")");
}

BigInt ppp_product(std::span<const int> values) {
  BigInt w = 1;
  for (int a : values) w *= a;
  return w;
}

unsigned ppp_required_bits(const BigInt& w) {
  if (w <= 1) return 0;
  const auto floor_log = static_cast<unsigned>(boost::multiprecision::msb(w));
  const bool power_of_two = boost::multiprecision::lsb(w) == floor_log;
  return 2 * (floor_log + (power_of_two ? 0 : 1));
}

unsigned ppp_default_bits(const BigInt& w) { return std::max(128U, ppp_required_bits(w) + 64); }

PppReduction reduce_ppp(const PppInstance& ppp, unsigned precision_bits) {
  if (ppp.values.empty()) throw InputError("PPP instance is empty");
  for (int a : ppp.values) {
    if (a < kPppMinValue) throw InputError("PPP values must be at least 2");
  }
  PppReduction out;
  out.w = ppp_product(ppp.values);
  const unsigned required = ppp_required_bits(out.w);
  out.bits = precision_bits ? precision_bits : ppp_default_bits(out.w);
  if (out.bits < required) {
    throw PrecisionError(std::to_string(out.bits) + " bits cannot separate products up to W; need " +
                         std::to_string(required));
  }
  PrecisionScope scope(out.bits);
  out.sqrt_w = sqrt(HighPrecisionScalar(out.w));
  std::vector<HpJob> jobs;
  jobs.reserve(ppp.values.size());
  for (std::size_t k = 0; k < ppp.values.size(); ++k) {
    const HighPrecisionScalar a(ppp.values[k]);
    jobs.push_back(HpJob{static_cast<int>(k) + 1, HighPrecisionScalar(1 / a),
                         HighPrecisionScalar(log(a)), HighPrecisionScalar(out.sqrt_w * (a - 1))});
  }
  out.instance = HpInstance(std::move(jobs), out.bits,
                            Origin{OriginKind::Ppp, std::string(to_string(ppp.type))});
  out.threshold = out.sqrt_w - 1 - log(out.sqrt_w);
  return out;
}

Instance from_csp(std::span<const College> colleges) {
  std::vector<Job> jobs;
  jobs.reserve(colleges.size());
  int id = 1;
  for (const College& c : colleges) {
    if (!(c.alpha > 0 && c.alpha < 1)) throw InputError("admission probability must lie in (0, 1)");
    jobs.push_back(Job{id++, 1 - c.alpha, c.cost, c.weight * c.alpha / (1 - c.alpha)});
  }
  return Instance(std::move(jobs));
}

std::vector<College> to_csp(const Instance& instance) {
  std::vector<College> out;
  out.reserve(instance.size());
  for (const Job& j : instance.jobs()) {
    if (!(j.pi > 0 && j.pi < 1)) throw InputError("success probability must lie in (0, 1)");
    out.push_back(College{j.pi * j.reward / (1 - j.pi), 1 - j.pi, j.cost});
  }
  return out;
}

}  // namespace ujssp
