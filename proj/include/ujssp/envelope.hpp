#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ujssp/error.hpp"
#include "ujssp/scalar.hpp"

namespace ujssp {

// Profit line y = slope * x + intercept of one candidate subset. `owner` is an
// opaque handle chosen by the caller.
template <class T>
struct AffineFn {
  T slope{};
  T intercept{};
  std::uint32_t owner = 0;
};

// Line arithmetic for plain affine functions. A policy supplies slope ordering
// (with the scalar's parallel rule), the crossing point of two lines, and
// point evaluation; Envelope only ever compares crossing x-values.
template <class T>
class AffinePolicy {
 public:
  using Scalar = T;
  using Line = AffineFn<T>;

  // <0 when a is flatter than b, 0 when parallel.
  [[nodiscard]] int compare_slope(const Line& a, const Line& b) const {
    if (ScalarTraits<T>::parallel(a.slope, b.slope)) return 0;
    return a.slope < b.slope ? -1 : 1;
  }

  // Parallel lines: the stored one stays unless the newcomer is strictly higher.
  // Coinciding lines keep the stored owner.
  [[nodiscard]] bool keeps_over(const Line& stored, const Line& incoming) const {
    return stored.intercept >= incoming.intercept ||
           ScalarTraits<T>::coincide(stored.intercept, incoming.intercept);
  }

  // The x beyond which `steeper` lies above `flatter`.
  [[nodiscard]] Scalar crossing(const Line& flatter, const Line& steeper) const {
    return Scalar((flatter.intercept - steeper.intercept) / (steeper.slope - flatter.slope));
  }

  [[nodiscard]] Scalar value(const Line& line, const Scalar& x) const {
    return Scalar(line.slope * x + line.intercept);
  }

  [[nodiscard]] bool exceeds(const Scalar& a, const Scalar& b) const {
    return a > b && !ScalarTraits<T>::coincide(a, b);
  }

  void validate(const Line& line) const {
    if (!ScalarTraits<T>::is_finite(line.slope) || !ScalarTraits<T>::is_finite(line.intercept)) {
      throw InputError("profit line coefficients must be finite");
    }
  }

  [[nodiscard]] std::string csv_row(const Line& line) const {
    return ScalarTraits<T>::format(line.slope) + "," + ScalarTraits<T>::format(line.intercept) +
           "," + std::to_string(line.owner);
  }
};

enum class InsertOutcome { Added, Dominated };

// Upper envelope of lines over [lower, upper]. Lines are kept in a vector by
// strictly increasing slope; every stored line is the unique maximum on a
// subinterval of positive length, or the single stored line when
// lower == upper. Lines that only touch the envelope at a point are dropped.
template <class Policy>
class Envelope {
 public:
  using Line = typename Policy::Line;
  using X = typename Policy::Scalar;

  struct Segment {
    Line line;
    X lo;
    X hi;
  };

  Envelope(X lower, X upper, Policy policy = Policy{})
      : lower_(std::move(lower)), upper_(std::move(upper)), policy_(std::move(policy)) {
    if (upper_ < lower_) throw IntervalError("envelope interval is empty");
  }

  InsertOutcome insert(Line line) {
    policy_.validate(line);
    if (lines_.empty()) {
      lines_.push_back(std::move(line));
      ++insertions_;
      return InsertOutcome::Added;
    }
    if (!(lower_ < upper_)) return insert_at_point(std::move(line));

    const auto first_not_flatter = std::partition_point(
        lines_.begin(), lines_.end(),
        [&](const Line& l) { return policy_.compare_slope(l, line) < 0; });
    const auto pos = static_cast<std::ptrdiff_t>(first_not_flatter - lines_.begin());
    const auto size = static_cast<std::ptrdiff_t>(lines_.size());

    std::ptrdiff_t right = pos;
    if (pos < size && policy_.compare_slope(lines_[pos], line) == 0) {
      if (policy_.keeps_over(lines_[pos], line)) return InsertOutcome::Dominated;
      right = pos + 1;  // the parallel line lies strictly below and goes
    }

    // Walk outwards while the newcomer beats a neighbour on the neighbour's
    // whole winning range.
    std::ptrdiff_t left = pos - 1;
    std::optional<X> left_cross;
    while (left >= 0) {
      X x = policy_.crossing(lines_[left], line);
      const bool swallowed = left == 0 ? !(lower_ < x) : !(crossing(left - 1) < x);
      if (!swallowed) {
        left_cross = std::move(x);
        break;
      }
      --left;
    }
    std::optional<X> right_cross;
    while (right < size) {
      X x = policy_.crossing(line, lines_[right]);
      const bool swallowed = right == size - 1 ? !(x < upper_) : !(x < crossing(right));
      if (!swallowed) {
        right_cross = std::move(x);
        break;
      }
      ++right;
    }

    const X& from = left_cross && lower_ < *left_cross ? *left_cross : lower_;
    const X& to = right_cross && *right_cross < upper_ ? *right_cross : upper_;
    if (!(from < to)) return InsertOutcome::Dominated;

    const auto erase_begin = lines_.begin() + (left + 1);
    const auto erase_end = lines_.begin() + right;
    removals_ += static_cast<std::uint64_t>(erase_end - erase_begin);
    const auto at = lines_.erase(erase_begin, erase_end);
    lines_.insert(at, std::move(line));
    ++insertions_;
    return InsertOutcome::Added;
  }

  // Lowers the upper bound, dropping steep lines whose range falls beyond it.
  std::size_t shrink_upper(const X& new_upper) {
    if (new_upper < lower_) throw IntervalError("new upper bound lies below the lower bound");
    if (upper_ < new_upper) throw IntervalError("upper bound may only decrease");
    std::size_t removed = 0;
    while (lines_.size() >= 2 && !(crossing(lines_.size() - 2) < new_upper)) {
      lines_.pop_back();
      ++removed;
    }
    upper_ = new_upper;
    removals_ += removed;
    return removed;
  }

  // Raises the lower bound, dropping flat lines whose range falls below it.
  std::size_t shrink_lower(const X& new_lower) {
    if (upper_ < new_lower) throw IntervalError("new lower bound lies above the upper bound");
    if (new_lower < lower_) throw IntervalError("lower bound may only increase");
    std::size_t drop = 0;
    while (lines_.size() - drop >= 2 && !(new_lower < crossing(drop))) ++drop;
    lines_.erase(lines_.begin(), lines_.begin() + static_cast<std::ptrdiff_t>(drop));
    lower_ = new_lower;
    removals_ += drop;
    return drop;
  }

  // Partition of [lower, upper] into maximal ranges, one per stored line.
  [[nodiscard]] std::vector<Segment> winners() const {
    std::vector<Segment> out;
    out.reserve(lines_.size());
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      out.push_back(Segment{lines_[i], i == 0 ? lower_ : crossing(i - 1),
                            i + 1 == lines_.size() ? upper_ : crossing(i)});
    }
    return out;
  }

  // Line attaining the maximum at x (the steeper one on a crossing).
  [[nodiscard]] const Line& winner_at(const X& x) const {
    if (lines_.empty()) throw std::logic_error("empty envelope");
    std::size_t lo = 0;
    std::size_t hi = lines_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (x < crossing(mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lines_[lo];
  }

  [[nodiscard]] X value_at(const X& x) const { return policy_.value(winner_at(x), x); }

  [[nodiscard]] std::span<const Line> lines() const noexcept { return lines_; }
  [[nodiscard]] std::size_t size() const noexcept { return lines_.size(); }
  [[nodiscard]] bool empty() const noexcept { return lines_.empty(); }
  [[nodiscard]] const X& lower() const noexcept { return lower_; }
  [[nodiscard]] const X& upper() const noexcept { return upper_; }
  [[nodiscard]] const Policy& policy() const noexcept { return policy_; }
  [[nodiscard]] std::uint64_t insertions() const noexcept { return insertions_; }
  [[nodiscard]] std::uint64_t removals() const noexcept { return removals_; }

  template <class F>
  void remap_owners(F&& f) {
    for (Line& l : lines_) l.owner = f(l.owner);
  }

  // Throws std::logic_error when a structural invariant is broken.
  void check_invariants() const {
    if (upper_ < lower_) throw std::logic_error("envelope interval inverted");
    if (!(lower_ < upper_) && lines_.size() > 1) {
      throw std::logic_error("point envelope holds more than one line");
    }
    for (std::size_t i = 0; i + 1 < lines_.size(); ++i) {
      if (policy_.compare_slope(lines_[i], lines_[i + 1]) >= 0) {
        throw std::logic_error("slopes not strictly increasing at " + std::to_string(i));
      }
      const X x = crossing(i);
      if (!(lower_ < x) || !(x < upper_)) {
        throw std::logic_error("crossing " + std::to_string(i) + " outside the interval");
      }
      if (i > 0 && !(crossing(i - 1) < x)) {
        throw std::logic_error("crossings not strictly increasing at " + std::to_string(i));
      }
    }
  }

  // `slope,intercept,owner` per stored line.
  [[nodiscard]] std::string dump_csv() const {
    std::ostringstream out;
    for (const Line& l : lines_) out << policy_.csv_row(l) << '\n';
    return out.str();
  }

 private:
  // Crossing between stored lines i and i + 1.
  [[nodiscard]] X crossing(std::size_t i) const {
    return policy_.crossing(lines_[i], lines_[i + 1]);
  }

  InsertOutcome insert_at_point(Line line) {
    const X incumbent = policy_.value(lines_.front(), lower_);
    const X challenger = policy_.value(line, lower_);
    if (!policy_.exceeds(challenger, incumbent)) return InsertOutcome::Dominated;
    lines_.front() = std::move(line);
    ++insertions_;
    ++removals_;
    return InsertOutcome::Added;
  }

  std::vector<Line> lines_;
  X lower_;
  X upper_;
  Policy policy_;
  std::uint64_t insertions_ = 0;
  std::uint64_t removals_ = 0;
};

}  // namespace ujssp
