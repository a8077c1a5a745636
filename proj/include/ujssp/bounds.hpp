#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ujssp/core.hpp"

namespace ujssp {

using Matrix = std::vector<std::vector<double>>;

struct Assignment {
  double value = 0;
  std::vector<std::size_t> column_of_row;
};

// Maximum-weight perfect assignment of a square matrix, O(n^3).
Assignment max_weight_assignment(const Matrix& weight);

// q[j][k]: Z-rank j in position k (both 0-based), an optimistic contribution
// using the k largest success probabilities among the jobs ahead of j.
Matrix assignment_matrix(const Instance& instance);

double assignment_upper_bound(const Instance& instance);

// Exact when all probabilities are equal (InputError otherwise): one
// assignment per prefix length H with weights max{0, r pi^k - c} for k <= H.
Solution solve_identical_prob(const Instance& instance);

enum class Refinement { None, Pairwise, BigM };

std::string_view to_string(Refinement r);

// LP-format text. None gives the compact model over x_j and P_j; Pairwise and
// BigM give the assignment model over x_j_k with order-keeping rows added.
std::string export_milp(const Instance& instance, Refinement refinement);

struct ExternalResult {
  double objective = 0;
  double bound = 0;
  std::optional<double> root_bound;  // LP relaxation at the root, when reported
  double final_mip_gap = 0;
  std::optional<double> lp_gap;
};

struct Unavailable {
  std::string reason;
};

// Writes the model to a temporary .lp file and runs `command <path>`. The
// command prints `OBJ <value>` and `BOUND <value>`, optionally `ROOT <value>`.
// An empty command or exit status 127 is Unavailable; unreadable output is an
// AdapterError.
std::variant<ExternalResult, Unavailable> external_solve(std::string_view lp_text,
                                                         std::string_view command);

}  // namespace ujssp
