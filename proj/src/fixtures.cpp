#include "ujssp/fixtures.hpp"

namespace ujssp::fixtures {

namespace {

Instance build(std::initializer_list<Job> jobs) { return Instance(std::vector<Job>(jobs)); }

}  // namespace

Instance equal_reward_counterexample() {
  return build({{1, 0.9, 0.81, 1}, {2, 0.87, 0.77, 1}, {3, 0.67, 0.58, 1}});
}

Instance equal_expected_reward_counterexample() {
  return build({{1, 0.8, 57, 100}, {2, 0.4, 24, 200}, {3, 0.2, 8, 400}, {4, 0.1, 9, 800}});
}

Instance four_job_walkthrough() {
  return build({{1, 0.75, 75, 250}, {2, 0.5, 150, 500}, {3, 0.5, 70, 350}, {4, 0.6, 30, 100}});
}

PppInstance tiny_partition() { return PppInstance{{2, 2}, PppType::I, std::nullopt}; }

}  // namespace ujssp::fixtures
