#include "ujssp/stepwise.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <ostream>

namespace ujssp {

std::string_view to_string(Ordering::Kind kind) {
  switch (kind) {
    case Ordering::Kind::Ascending:
      return "ascending";
    case Ordering::Kind::Descending:
      return "descending";
    case Ordering::Kind::Random:
      return "random";
    case Ordering::Kind::ZOrder:
      break;
  }
  return "zorder";
}

Ordering::Kind parse_ordering(std::string_view text) {
  for (auto k : {Ordering::Kind::ZOrder, Ordering::Kind::Ascending, Ordering::Kind::Descending,
                 Ordering::Kind::Random}) {
    if (text == to_string(k)) return k;
  }
  throw InputError("unknown ordering '" + std::string(text) + "'");
}

std::uint32_t CandidateForest::add(std::uint32_t parent, std::size_t position) {
  if (nodes_.size() >= kNone) throw CapacityError("candidate forest is full");
  nodes_.push_back({parent, static_cast<std::uint32_t>(position)});
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::vector<std::size_t> CandidateForest::positions(std::uint32_t node) const {
  std::vector<std::size_t> out;
  for (std::uint32_t u = node; u != kRoot && u != kNone; u = nodes_.at(u).parent) {
    out.push_back(nodes_[u].position);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

template <class T>
std::optional<PrecisionScope> scope_for(unsigned bits) {
  if constexpr (std::is_same_v<T, HighPrecisionScalar>) {
    return std::optional<PrecisionScope>(std::in_place, bits);
  } else {
    return std::nullopt;
  }
}

template <class Line>
struct EngineResult {
  std::vector<std::size_t> positions;
  Line best;
  SolveStats stats;
};

template <class X>
void write_trace_number(std::ostream& out, const X& v) {
  out << ScalarTraits<double>::format(ScalarTraits<X>::to_double(v));
}

// Shared driver. Per step: read the winning ranges of the carried envelope,
// extend each winner with the step's job, shrink the carried envelope to the
// next bound, then insert the extensions.
template <class Policy, class Model>
EngineResult<typename Policy::Line> run_stepwise(const Model& model, Policy policy, bool speedups,
                                                 const SolveControl& control) {
  using Line = typename Policy::Line;
  const auto start = std::chrono::steady_clock::now();
  SolveStats stats;
  CandidateForest forest;
  Envelope<Policy> env(model.initial_lower(), model.initial_upper(), std::move(policy));
  Line root = model.root_line();
  root.owner = CandidateForest::kRoot;
  env.insert(std::move(root));
  stats.subsets_evaluated = 1;
  stats.envelope_peak_size = 1;

  std::size_t compact_at = std::size_t{1} << 16;
  std::vector<Line> fresh;
  for (std::size_t k = 0; k < model.steps(); ++k) {
    if (control.expired()) {
      stats.runtime = std::chrono::steady_clock::now() - start;
      throw DeadlineExceeded(stats);
    }
    fresh.clear();
    for (const auto& seg : env.winners()) {
      if (speedups && !model.worth_extending(seg.lo, seg.hi, k)) continue;
      Line ext = model.extend(seg.line, k);
      ext.owner = forest.add(seg.line.owner, model.position(k));
      fresh.push_back(std::move(ext));
      ++stats.subsets_evaluated;
    }
    const std::size_t before = env.size() + fresh.size();
    model.tighten(env, k);
    for (Line& l : fresh) env.insert(std::move(l));
    stats.envelope_peak_size = std::max<std::uint64_t>(stats.envelope_peak_size, env.size());

    if (control.trace) {
      std::ostream& out = *control.trace;
      out << R"({"step":)" << k + 1 << R"(,"job":)" << model.job_id(k)
          << R"(,"candidates_before":)" << before << R"(,"candidates_after":)" << env.size()
          << R"(,"lower":)";
      write_trace_number(out, env.lower());
      out << R"(,"upper":)";
      write_trace_number(out, env.upper());
      out << R"(,"breakpoints":[)";
      const auto segs = env.winners();
      for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        if (i) out << ',';
        write_trace_number(out, segs[i].hi);
      }
      out << "]}\n";
    }
    if (forest.size() > compact_at) {
      forest.compact(env);
      compact_at = std::max(compact_at, 2 * forest.size());
    }
  }

  // The final interval is a single point, so one line remains.
  EngineResult<Line> result{forest.positions(env.lines().front().owner), env.lines().front(), stats};
  result.stats.runtime = std::chrono::steady_clock::now() - start;
  return result;
}

template <class T>
void require_finite(const AffineFn<T>& line) {
  if constexpr (std::is_same_v<T, HighPrecisionScalar>) {
    if (!ScalarTraits<T>::is_finite(line.slope) || !ScalarTraits<T>::is_finite(line.intercept)) {
      throw PrecisionError("profit line overflowed at " + std::to_string(current_precision_bits()) +
                           " bits; raise --precision-bits");
    }
  }
}

// F(S, r) = R(S) - c(S) + P(S) r over downstream reward r.
template <class T>
class ForwardModel {
 public:
  ForwardModel(const BasicInstance<T>& instance, std::vector<std::size_t> order)
      : instance_(instance), order_(std::move(order)), tail_(order_.size() + 1, T(0)) {
    for (std::size_t k = order_.size(); k-- > 0;) {
      const auto& j = job(k);
      tail_[k] = j.pi * (j.reward + tail_[k + 1]);
    }
  }

  [[nodiscard]] T initial_lower() const { return T(0); }
  [[nodiscard]] T initial_upper() const { return tail_[0]; }
  [[nodiscard]] std::size_t steps() const { return order_.size(); }
  [[nodiscard]] std::size_t position(std::size_t k) const { return order_[k]; }
  [[nodiscard]] int job_id(std::size_t k) const { return job(k).id; }
  [[nodiscard]] AffineFn<T> root_line() const { return {T(1), T(0), 0}; }

  [[nodiscard]] AffineFn<T> extend(const AffineFn<T>& line, std::size_t k) const {
    const auto& j = job(k);
    T slope = line.slope * j.pi;
    AffineFn<T> out{slope, T(line.intercept + slope * j.reward - j.cost), 0};
    require_finite(out);
    return out;
  }

  [[nodiscard]] bool worth_extending(const T& lo, const T& hi, std::size_t k) const {
    return extend_filter_speedup(WinningRange<T>{lo, hi}, job(k), Direction::Forward);
  }

  void tighten(Envelope<AffinePolicy<T>>& env, std::size_t k) const {
    const T& next = tail_[k + 1];
    env.shrink_upper(next < env.upper() ? next : env.upper());
  }

 private:
  [[nodiscard]] const BasicJob<T>& job(std::size_t k) const { return instance_.job(order_[k]); }

  const BasicInstance<T>& instance_;
  std::vector<std::size_t> order_;
  std::vector<T> tail_;  // reward of the jobs from step k on
};

// B(S, p) = p R(S) - c(S) over upstream success probability p; jobs are
// taken from the back of the order.
template <class T>
class BackwardModel {
 public:
  BackwardModel(const BasicInstance<T>& instance, std::vector<std::size_t> order)
      : instance_(instance), order_(std::move(order)), head_(order_.size() + 1, T(1)) {
    for (std::size_t m = 0; m < order_.size(); ++m) {
      head_[m + 1] = head_[m] * instance_.job(order_[m]).pi;
    }
  }

  [[nodiscard]] T initial_lower() const { return head_.back(); }
  [[nodiscard]] T initial_upper() const { return T(1); }
  [[nodiscard]] std::size_t steps() const { return order_.size(); }
  [[nodiscard]] std::size_t position(std::size_t k) const { return order_[index(k)]; }
  [[nodiscard]] int job_id(std::size_t k) const { return job(k).id; }
  [[nodiscard]] AffineFn<T> root_line() const { return {T(0), T(0), 0}; }

  [[nodiscard]] AffineFn<T> extend(const AffineFn<T>& line, std::size_t k) const {
    const auto& j = job(k);
    AffineFn<T> out{T(j.pi * (j.reward + line.slope)), T(line.intercept - j.cost), 0};
    require_finite(out);
    return out;
  }

  [[nodiscard]] bool worth_extending(const T& lo, const T& hi, std::size_t k) const {
    return extend_filter_speedup(WinningRange<T>{lo, hi}, job(k), Direction::Backward);
  }

  void tighten(Envelope<AffinePolicy<T>>& env, std::size_t k) const {
    T next = head_[index(k)];
    if (next < env.lower()) next = env.lower();
    if (env.upper() < next) next = env.upper();
    env.shrink_lower(next);
  }

 private:
  [[nodiscard]] std::size_t index(std::size_t k) const { return order_.size() - 1 - k; }
  [[nodiscard]] const BasicJob<T>& job(std::size_t k) const {
    return instance_.job(order_[index(k)]);
  }

  const BasicInstance<T>& instance_;
  std::vector<std::size_t> order_;
  std::vector<T> head_;  // success probability of the first m jobs
};

template <class T>
bool equal_z(const T& a, const T& b) {
  return a == b || ScalarTraits<T>::approx_equal(a, b);
}

}  // namespace

template <class T>
std::vector<std::size_t> processing_order(const BasicInstance<T>& instance,
                                          const Ordering& ordering) {
  const auto z = instance.z_order();
  if (ordering.kind == Ordering::Kind::ZOrder) return {z.begin(), z.end()};
  if (!instance.empty()) {
    const T first = z_index(instance.job(0));
    for (const auto& j : instance.jobs()) {
      if (!equal_z(z_index(j), first)) {
        throw InputError("ordering '" + std::string(to_string(ordering.kind)) +
                         "' needs all Z indices equal");
      }
    }
  }
  std::vector<std::size_t> order(instance.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto reward = [&](std::size_t p) -> const T& { return instance.job(p).reward; };
  switch (ordering.kind) {
    case Ordering::Kind::Ascending:
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return reward(a) < reward(b); });
      break;
    case Ordering::Kind::Descending:
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return reward(b) < reward(a); });
      break;
    case Ordering::Kind::Random: {
      SplitMix64 rng(ordering.seed);
      rng.shuffle(order.begin(), order.end());
      break;
    }
    case Ordering::Kind::ZOrder:
      break;
  }
  return order;
}

template <class T>
bool extend_filter_speedup(const WinningRange<T>& range, const BasicJob<T>& job,
                           Direction direction) {
  if (direction == Direction::Forward) return !(range.hi < job.pi * job.reward);
  return !(job.pi < range.lo);
}

template <class T>
BasicSolution<T> solve_forward(const BasicInstance<T>& instance, const StepwiseConfig& config) {
  auto scope = scope_for<T>(instance.precision_bits());
  ForwardModel<T> model(instance, processing_order(instance, config.ordering));
  auto run = run_stepwise(model, AffinePolicy<T>{}, config.speedups_enabled, config.control);
  return make_solution(instance, std::move(run.positions), run.stats);
}

template <class T>
BasicSolution<T> solve_backward(const BasicInstance<T>& instance, const StepwiseConfig& config) {
  auto scope = scope_for<T>(instance.precision_bits());
  BackwardModel<T> model(instance, processing_order(instance, config.ordering));
  auto run = run_stepwise(model, AffinePolicy<T>{}, config.speedups_enabled, config.control);
  return make_solution(instance, std::move(run.positions), run.stats);
}

template <class T>
BasicSolution<T> solve_stepwise(const BasicInstance<T>& instance, const StepwiseConfig& config) {
  return config.direction == Direction::Forward ? solve_forward(instance, config)
                                                : solve_backward(instance, config);
}

// --- product-partition form -------------------------------------------------

HighPrecisionScalar PppPolicy::crossing(const Line& flatter, const Line& steeper) const {
  // Solve -lnP1 - s x/P1 = -lnP2 - s x/P2:
  // x = (lnP2 - lnP1) * P1 P2 / (s (P2 - P1)), the ratio kept rational.
  const HighPrecisionScalar gap = steeper.log_product - flatter.log_product;
  if (!(gap > 0)) {
    throw PrecisionError("products " + flatter.product.str() + " and " + steeper.product.str() +
                         " share a logarithm at " + std::to_string(current_precision_bits()) +
                         " bits; raise --precision-bits");
  }
  const BigRational ratio(BigInt(flatter.product * steeper.product),
                          BigInt(steeper.product - flatter.product));
  return HighPrecisionScalar(gap * HighPrecisionScalar(ratio) / sqrt_w_);
}

HighPrecisionScalar PppPolicy::value(const Line& line, const Scalar& x) const {
  return HighPrecisionScalar(-line.log_product - sqrt_w_ * x / HighPrecisionScalar(line.product));
}

void PppPolicy::validate(const Line& line) const {
  if (line.product < 1) throw InputError("product must be positive");
}

std::string PppPolicy::csv_row(const Line& line) const {
  const HighPrecisionScalar slope = -sqrt_w_ / HighPrecisionScalar(line.product);
  return ScalarTraits<HighPrecisionScalar>::format(slope) + "," +
         ScalarTraits<HighPrecisionScalar>::format(HighPrecisionScalar(-line.log_product)) + "," +
         std::to_string(line.owner);
}

namespace {

// x = 1 - r / sqrt(W) where r is the downstream reward; after step k it
// ranges over [1 / prod(remaining a), 1].
class PppModel {
 public:
  PppModel(const PppInstance& ppp, std::vector<std::size_t> order)
      : values_(ppp.values), order_(std::move(order)), suffix_(order_.size() + 1, BigInt(1)) {
    for (std::size_t k = order_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] * a(k);
  }

  [[nodiscard]] HighPrecisionScalar initial_lower() const { return bound(0); }
  [[nodiscard]] HighPrecisionScalar initial_upper() const { return HighPrecisionScalar(1); }
  [[nodiscard]] std::size_t steps() const { return order_.size(); }
  [[nodiscard]] std::size_t position(std::size_t k) const { return order_[k]; }
  [[nodiscard]] int job_id(std::size_t k) const { return static_cast<int>(order_[k]) + 1; }
  [[nodiscard]] PppLine root_line() const { return PppLine{}; }

  [[nodiscard]] PppLine extend(const PppLine& line, std::size_t k) const {
    PppLine out;
    out.product = line.product * a(k);
    // Directly from the product so equal products share one logarithm.
    out.log_product = log(HighPrecisionScalar(out.product));
    return out;
  }

  // Skip when the whole range lies above 1/a, i.e. r below pi r.
  [[nodiscard]] bool worth_extending(const HighPrecisionScalar& lo, const HighPrecisionScalar&,
                                     std::size_t k) const {
    return !(lo * a(k) > 1);
  }

  void tighten(Envelope<PppPolicy>& env, std::size_t k) const {
    HighPrecisionScalar next = bound(k + 1);
    if (next < env.lower()) next = env.lower();
    if (env.upper() < next) next = env.upper();
    env.shrink_lower(next);
  }

 private:
  [[nodiscard]] int a(std::size_t k) const { return values_[order_[k]]; }
  [[nodiscard]] HighPrecisionScalar bound(std::size_t k) const {
    return HighPrecisionScalar(HighPrecisionScalar(1) / HighPrecisionScalar(suffix_[k]));
  }

  const std::vector<int>& values_;
  std::vector<std::size_t> order_;
  std::vector<BigInt> suffix_;
};

}  // namespace

PppSolveResult solve_ppp_mode(const PppInstance& ppp, const PppSolveOptions& options) {
  const BigInt w = ppp_product(ppp.values);
  const unsigned required = ppp_required_bits(w);
  const unsigned bits = options.precision_bits ? options.precision_bits : ppp_default_bits(w);
  if (bits < required) {
    throw PrecisionError(std::to_string(bits) + " bits cannot separate products up to W; need " +
                         std::to_string(required));
  }
  PrecisionScope scope(bits);
  PppReduction reduced = reduce_ppp(ppp, bits);
  // Every Z index equals sqrt(W); rounded indices would order on noise, so the
  // Z-rule order is taken as input order.
  std::vector<std::size_t> order(ppp.values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (options.ordering.kind != Ordering::Kind::ZOrder) {
    order = processing_order(reduced.instance, options.ordering);
  }
  PppModel model(ppp, std::move(order));
  auto run = run_stepwise(model, PppPolicy(reduced.sqrt_w), options.speedups_enabled,
                          options.control);

  PppSolveResult out;
  out.bits = bits;
  out.threshold = reduced.threshold;
  out.chosen = run.positions;
  std::sort(out.chosen.begin(), out.chosen.end());
  out.chosen_product = 1;
  out.rest_product = 1;
  for (std::size_t i = 0, c = 0; i < ppp.values.size(); ++i) {
    if (c < out.chosen.size() && out.chosen[c] == i) {
      out.chosen_product *= ppp.values[i];
      ++c;
    } else {
      out.rest.push_back(i);
      out.rest_product *= ppp.values[i];
    }
  }

  out.solution = make_solution(reduced.instance, run.positions, run.stats);
  // Z indices tie, so list ids by position rather than by rounding noise.
  std::sort(out.solution.selected.begin(), out.solution.selected.end());
  // Closed form: R(S) telescopes to sqrt(W) (1 - 1/P).
  const HighPrecisionScalar p(out.chosen_product);
  out.solution.expected_reward = reduced.sqrt_w * (1 - 1 / p);
  out.solution.total_cost = log(p);
  out.solution.objective = out.solution.expected_reward - out.solution.total_cost;
  return out;
}

#define UJSSP_STEPWISE_INSTANTIATE(T)                                                        \
  template std::vector<std::size_t> processing_order<T>(const BasicInstance<T>&,            \
                                                        const Ordering&);                   \
  template bool extend_filter_speedup<T>(const WinningRange<T>&, const BasicJob<T>&,        \
                                         Direction);                                        \
  template BasicSolution<T> solve_forward<T>(const BasicInstance<T>&, const StepwiseConfig&); \
  template BasicSolution<T> solve_backward<T>(const BasicInstance<T>&, const StepwiseConfig&); \
  template BasicSolution<T> solve_stepwise<T>(const BasicInstance<T>&, const StepwiseConfig&);

UJSSP_STEPWISE_INSTANTIATE(double)
UJSSP_STEPWISE_INSTANTIATE(HighPrecisionScalar)
#undef UJSSP_STEPWISE_INSTANTIATE

}  // namespace ujssp
