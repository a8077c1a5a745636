#pragma once

#include <stdexcept>
#include <string>

#include "ujssp/stats.hpp"

namespace ujssp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid job data, unknown ids, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

// Problem too large for the requested method (enumeration, DP table).
class CapacityError : public Error {
 public:
  using Error::Error;
};

class IntervalError : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class AdapterError : public Error {
 public:
  using Error::Error;
};

// Thrown at a step boundary once the cooperative deadline has passed.
class DeadlineExceeded : public Error {
 public:
  explicit DeadlineExceeded(SolveStats partial)
      : Error("time limit reached"), stats_(partial) {}

  [[nodiscard]] const SolveStats& stats() const noexcept { return stats_; }

 private:
  SolveStats stats_;
};

}  // namespace ujssp
