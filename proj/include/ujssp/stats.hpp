#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>

namespace ujssp {

struct SolveStats {
  std::uint64_t subsets_evaluated = 0;
  std::uint64_t envelope_peak_size = 0;
  std::chrono::nanoseconds runtime{0};

  [[nodiscard]] double runtime_ms() const {
    return std::chrono::duration<double, std::milli>(runtime).count();
  }
};

// Cooperative controls shared by the long-running solvers. The deadline is
// checked at step boundaries only.
struct SolveControl {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::ostream* trace = nullptr;

  [[nodiscard]] bool expired() const {
    return deadline && std::chrono::steady_clock::now() >= *deadline;
  }
};

}  // namespace ujssp
