#pragma once

#include <string_view>
#include <vector>

#include "ujssp/core.hpp"

namespace ujssp {

enum class SpecialCase { IdenticalCosts, IdenticalProbabilities, General };

std::string_view to_string(SpecialCase c);

// Repeatedly adds the job with the largest z(S + {j}) while that strictly
// improves z (gain above the scalar's improvement threshold). Equal gains go to
// the lowest id. When `objective_path` is given it receives z after every
// accepted job, starting with z(empty) = 0.
template <class T>
BasicSolution<T> greedy_select(const BasicInstance<T>& instance,
                               std::vector<T>* objective_path = nullptr);

// First matching class, comparing costs and probabilities with an absolute
// tolerance of 1e-12. Greedy is optimal whenever this is not General. Equal
// rewards are deliberately not certified.
template <class T>
SpecialCase classify_special_case(const BasicInstance<T>& instance);

extern template BasicSolution<double> greedy_select<double>(const BasicInstance<double>&,
                                                            std::vector<double>*);
extern template BasicSolution<HighPrecisionScalar> greedy_select<HighPrecisionScalar>(
    const BasicInstance<HighPrecisionScalar>&, std::vector<HighPrecisionScalar>*);
extern template SpecialCase classify_special_case<double>(const BasicInstance<double>&);
extern template SpecialCase classify_special_case<HighPrecisionScalar>(
    const BasicInstance<HighPrecisionScalar>&);

}  // namespace ujssp
