#include <gtest/gtest.h>

#include "support.hpp"
#include "ujssp/dp.hpp"
#include "ujssp/fixtures.hpp"
#include "ujssp/instances.hpp"
#include "ujssp/oracle.hpp"
#include "ujssp/stepwise.hpp"

using namespace ujssp;

TEST(Dp, Walkthrough) {
  const Instance in = fixtures::four_job_walkthrough();
  const auto s = solve_dp(in);
  EXPECT_DOUBLE_EQ(s.objective, 173.75);
  EXPECT_EQ(s.selected, (std::vector<int>{1, 3}));
  EXPECT_EQ(integral_budget(in), 325);
  EXPECT_EQ(s.stats.subsets_evaluated, 4U * 326U);
}

TEST(Dp, TableBoundaryValues) {
  const Instance in = fixtures::four_job_walkthrough();
  const DpTable t = fill_dp_table(in);
  ASSERT_EQ(t.rows, 5U);
  ASSERT_EQ(t.budgets, 326U);
  for (std::size_t b = 0; b < t.budgets; ++b) EXPECT_EQ(t.at(b, 5), 0);
  // Only job 4 fits a budget of 30.
  EXPECT_DOUBLE_EQ(t.at(30, 4), 60);
  EXPECT_DOUBLE_EQ(t.at(29, 1), 0);
  // Jobs 1 and 3 cost 145 together: 0.75*250 + 0.75*0.5*350.
  EXPECT_DOUBLE_EQ(t.at(145, 1), 318.75);
}

TEST(Dp, RejectsFractionalCosts) {
  const Instance in({Job{1, 0.5, 2.5, 10}});
  EXPECT_THROW((void)solve_dp(in), InputError);
  EXPECT_THROW((void)integral_budget(in), InputError);
}

TEST(Dp, ZeroBudget) {
  const Instance in({Job{1, 0.5, 0, 10}, Job{2, 0.3, 0, 20}});
  const auto s = solve_dp(in);
  EXPECT_EQ(s.selected.size(), 2U);
  EXPECT_DOUBLE_EQ(s.objective, net_profit(in, std::span<const int>(s.selected)));
  EXPECT_EQ(solve_dp(Instance{}).objective, 0);
}

TEST(Dp, MatchesOracleAndParallelMatchesSerial) {
  for (int scheme = 0; scheme < 4; ++scheme) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Instance in = generate_uniform(6 + seed, static_cast<UniformScheme>(scheme), seed);
      const double best = brute_force(in).optimum.objective;
      const auto serial = solve_dp(in);
      DpOptions par;
      par.parallel = true;
      par.threads = 3;
      const auto parallel = solve_dp(in, par);
      EXPECT_NEAR(serial.objective, best, 1e-9 * std::max(1.0, best));
      EXPECT_EQ(serial.selected, parallel.selected);
      EXPECT_EQ(serial.objective, parallel.objective);
    }
  }
}

TEST(Dp, PlaneLimit) {
  DpOptions o;
  o.max_plane_bits = 10;
  EXPECT_THROW((void)solve_dp(fixtures::four_job_walkthrough(), o), CapacityError);
}

TEST(Dp, AgreesWithStepwiseBeyondEnumeration) {
  const Instance in = generate_uniform(60, UniformScheme::IV, 3);
  EXPECT_NEAR(solve_dp(in).objective, solve_forward(in).objective, 1e-7);
}
