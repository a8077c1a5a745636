#pragma once

#include "ujssp/core.hpp"
#include "ujssp/instances.hpp"

namespace ujssp::fixtures {

// Three jobs with unit rewards on which greedy stops at {1,2} (0.103) while
// {1,3} reaches 0.113.
Instance equal_reward_counterexample();

// Four jobs sharing r*pi = 80; greedy picks {1,2,3} (80.6), the optimum is
// {1,3,4} (82.8).
Instance equal_expected_reward_counterexample();

// Four jobs used to trace the stepwise solvers; optimum {1,3} at 173.75.
Instance four_job_walkthrough();

// {2, 2}: a perfect split exists.
PppInstance tiny_partition();

}  // namespace ujssp::fixtures
