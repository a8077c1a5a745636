#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "ujssp/fixtures.hpp"
#include "ujssp/instances.hpp"
#include "ujssp/oracle.hpp"
#include "ujssp/stepwise.hpp"

using namespace ujssp;

namespace {

StepwiseConfig config(Direction d, bool speedups) {
  StepwiseConfig c;
  c.direction = d;
  c.speedups_enabled = speedups;
  return c;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Stepwise, WalkthroughCounts) {
  const Instance in = fixtures::four_job_walkthrough();
  const auto f = solve_forward(in, config(Direction::Forward, false));
  EXPECT_EQ(f.selected, (std::vector<int>{1, 3}));
  EXPECT_DOUBLE_EQ(f.objective, 173.75);
  EXPECT_EQ(f.stats.subsets_evaluated, 6U);

  const auto b = solve_backward(in, config(Direction::Backward, false));
  EXPECT_EQ(b.selected, (std::vector<int>{1, 3}));
  EXPECT_DOUBLE_EQ(b.objective, 173.75);
  EXPECT_EQ(b.stats.subsets_evaluated, 8U);

  EXPECT_EQ(solve_forward(in).stats.subsets_evaluated, 5U);
  EXPECT_EQ(solve_backward(in, config(Direction::Backward, true)).stats.subsets_evaluated, 7U);
}

TEST(Stepwise, WalkthroughTrace) {
  std::ostringstream trace;
  StepwiseConfig c = config(Direction::Forward, false);
  c.control.trace = &trace;
  (void)solve_forward(fixtures::four_job_walkthrough(), c);
  std::istringstream lines(trace.str());
  std::vector<std::string> rows;
  for (std::string l; std::getline(lines, l);) rows.push_back(l);
  ASSERT_EQ(rows.size(), 4U);
  EXPECT_EQ(rows[1],
            R"({"step":2,"job":2,"candidates_before":2,"candidates_after":2,"lower":0,"upper":205,"breakpoints":[100]})");
  EXPECT_NE(rows[0].find(R"("upper":352.5)"), std::string::npos);
  EXPECT_NE(rows[3].find(R"("candidates_after":1)"), std::string::npos);
}

TEST(Stepwise, BackwardTraceBreakpoints) {
  std::ostringstream trace;
  StepwiseConfig c = config(Direction::Backward, false);
  c.control.trace = &trace;
  (void)solve_backward(fixtures::four_job_walkthrough(), c);
  const std::string t = trace.str();
  EXPECT_NE(t.find(R"("lower":0.1875,"upper":1,"breakpoints":[0.5])"), std::string::npos);
  EXPECT_NE(t.find(R"("breakpoints":[0.4])"), std::string::npos);
  EXPECT_NE(t.find(R"("breakpoints":[0.9230769230769231])"), std::string::npos);
}

TEST(Stepwise, SpeedupFilterRule) {
  const Job j{1, 0.6, 10, 100};  // pi r = 60
  EXPECT_FALSE(extend_filter_speedup(WinningRange<double>{0, 50}, j, Direction::Forward));
  EXPECT_TRUE(extend_filter_speedup(WinningRange<double>{0, 60}, j, Direction::Forward));
  const Job zero{2, 0.5, 1, 0};
  EXPECT_TRUE(extend_filter_speedup(WinningRange<double>{0, 500}, zero, Direction::Forward));
  const Job b{3, 0.95, 1, 10};
  EXPECT_TRUE(extend_filter_speedup(WinningRange<double>{0.9, 1}, b, Direction::Backward));
  const Job lowpi{4, 0.5, 1, 10};
  EXPECT_FALSE(extend_filter_speedup(WinningRange<double>{0.6, 1}, lowpi, Direction::Backward));
}

TEST(Stepwise, TrivialInstances) {
  const Instance one({Job{1, 0.5, 10, 100}});
  EXPECT_EQ(solve_forward(one).selected, (std::vector<int>{1}));
  EXPECT_EQ(solve_backward(one).selected, (std::vector<int>{1}));
  const Instance bad({Job{1, 0.5, 60, 100}});
  EXPECT_TRUE(solve_forward(bad).selected.empty());
  const auto empty_f = solve_forward(Instance{});
  const auto empty_b = solve_backward(Instance{});
  EXPECT_TRUE(empty_f.selected.empty());
  EXPECT_EQ(empty_b.objective, 0);
  EXPECT_EQ(empty_b.stats.subsets_evaluated, 1U);
}

TEST(Stepwise, MatchesOracleOnRandomBattery) {
  for (int scheme = 0; scheme < 4; ++scheme) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const std::size_t n = 5 + seed % 9;
      const Instance in = generate_uniform(n, static_cast<UniformScheme>(scheme), 1000 + seed);
      const double best = brute_force(in).optimum.objective;
      for (Direction d : {Direction::Forward, Direction::Backward}) {
        const auto on = solve_stepwise(in, config(d, true));
        const auto off = solve_stepwise(in, config(d, false));
        EXPECT_LE(rel(on.objective, best), 1e-9) << scheme << "/" << seed;
        EXPECT_LE(rel(off.objective, best), 1e-9) << scheme << "/" << seed;
        EXPECT_LE(on.stats.subsets_evaluated, off.stats.subsets_evaluated);
        EXPECT_NEAR(net_profit(in, std::span<const int>(on.selected)), on.objective,
                    1e-9 * std::max(1.0, best));
      }
    }
  }
}

TEST(Stepwise, NonCanonicalInput) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance in = support::loose_instance(10, seed);
    const double best = brute_force(in).optimum.objective;
    EXPECT_LE(rel(solve_forward(in).objective, best), 1e-9);
    EXPECT_LE(rel(solve_backward(in).objective, best), 1e-9);
  }
}

TEST(Stepwise, HighPrecisionAgrees) {
  PrecisionScope scope(160);
  const Instance in = generate_uniform(12, UniformScheme::III, 5);
  std::vector<HpJob> jobs;
  for (const Job& j : in.jobs()) {
    jobs.push_back(HpJob{j.id, HighPrecisionScalar(j.pi), HighPrecisionScalar(j.cost),
                         HighPrecisionScalar(j.reward)});
  }
  const HpInstance hp(jobs, 160);
  const auto f = solve_forward(hp);
  const auto b = solve_backward(hp);
  const double ref = solve_forward(in).objective;
  EXPECT_NEAR(f.objective.convert_to<double>(), ref, 1e-9 * ref);
  EXPECT_EQ(f.objective, b.objective);
  EXPECT_EQ(f.selected, solve_forward(in).selected);
}

TEST(Stepwise, DeadlineIsCooperative) {
  StepwiseConfig c;
  c.control.deadline = std::chrono::steady_clock::now();
  const Instance in = generate_uniform(50, UniformScheme::II, 1);
  EXPECT_THROW((void)solve_forward(in, c), DeadlineExceeded);
}

TEST(Stepwise, OrderingNeedsEqualZ) {
  const Instance in = fixtures::four_job_walkthrough();
  StepwiseConfig c;
  c.ordering.kind = Ordering::Kind::Ascending;
  EXPECT_THROW((void)solve_forward(in, c), InputError);
  EXPECT_EQ(parse_ordering("random"), Ordering::Kind::Random);
  EXPECT_EQ(to_string(Ordering::Kind::Descending), "descending");
  EXPECT_THROW((void)parse_ordering("sideways"), InputError);
}

TEST(Stepwise, EqualZOrderingsAgree) {
  // pi r / (1 - pi) = 100 for every job.
  std::vector<Job> jobs;
  SplitMix64 rng(8);
  for (int j = 1; j <= 9; ++j) {
    const double pi = rng.uniform(0.2, 0.9);
    jobs.push_back(Job{j, pi, rng.uniform(0.5, 30), 100 * (1 - pi) / pi});
  }
  const Instance in(jobs);
  const double best = brute_force(in).optimum.objective;
  for (auto kind : {Ordering::Kind::ZOrder, Ordering::Kind::Ascending, Ordering::Kind::Descending,
                    Ordering::Kind::Random}) {
    StepwiseConfig c;
    c.ordering = {kind, 3};
    EXPECT_LE(rel(solve_forward(in, c).objective, best), 1e-9) << to_string(kind);
  }
  const auto asc = processing_order(in, {Ordering::Kind::Ascending, 0});
  for (std::size_t k = 1; k < asc.size(); ++k) {
    EXPECT_LE(in.job(asc[k - 1]).reward, in.job(asc[k]).reward);
  }
}

TEST(Stepwise, ForestCompaction) {
  CandidateForest forest;
  const auto a = forest.add(CandidateForest::kRoot, 4);
  const auto b = forest.add(a, 7);
  const auto dead = forest.add(CandidateForest::kRoot, 9);
  (void)dead;
  EXPECT_EQ(forest.positions(b), (std::vector<std::size_t>{4, 7}));
  Envelope<AffinePolicy<double>> env(0, 10);
  env.insert(AffineFn<double>{1, 0, b});
  forest.compact(env);
  EXPECT_EQ(forest.size(), 3U);
  EXPECT_EQ(forest.positions(env.lines().front().owner), (std::vector<std::size_t>{4, 7}));
}

TEST(Stepwise, ForwardAndBackwardAgreeAtScale) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Instance in = generate_uniform(200, UniformScheme::I, seed);
    const auto f = solve_forward(in);
    const auto b = solve_backward(in);
    EXPECT_LE(rel(f.objective, b.objective), 1e-9);
  }
}
