#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>
#include <filesystem>
#include <fstream>

#include "support.hpp"
#include "ujssp/bounds.hpp"
#include "ujssp/fixtures.hpp"
#include "ujssp/greedy.hpp"
#include "ujssp/instances.hpp"
#include "ujssp/oracle.hpp"

using namespace ujssp;

TEST(Bounds, HungarianSmall) {
  const Matrix w{{1, 2, 3}, {2, 4, 6}, {3, 6, 9}};
  const auto a = max_weight_assignment(w);
  EXPECT_DOUBLE_EQ(a.value, 14);
  std::vector<bool> used(3, false);
  for (std::size_t c : a.column_of_row) used.at(c) = true;
  EXPECT_TRUE(used[0] && used[1] && used[2]);
  EXPECT_EQ(max_weight_assignment(Matrix{}).value, 0);
  EXPECT_THROW((void)max_weight_assignment(Matrix{{1, 2}}), InputError);
}

TEST(Bounds, HungarianAgainstPermutations) {
  SplitMix64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 6;
    Matrix w(n, std::vector<double>(n));
    for (auto& row : w)
      for (double& x : row) x = rng.uniform(-5, 20);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1e300;
    do {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += w[i][perm[i]];
      best = std::max(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_NEAR(max_weight_assignment(w).value, best, 1e-9);
  }
}

TEST(Bounds, WalkthroughUpperBound) {
  const Instance in = fixtures::four_job_walkthrough();
  EXPECT_NEAR(assignment_upper_bound(in), 173.75, 1e-9);
  const Matrix q = assignment_matrix(in);
  ASSERT_EQ(q.size(), 4U);
  EXPECT_DOUBLE_EQ(q[0][0], 0.75 * 250 - 75);
}

TEST(Bounds, UpperBoundHoldsOnRandomInstances) {
  for (int scheme = 0; scheme < 4; ++scheme) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const Instance in = generate_uniform(5 + seed % 8, static_cast<UniformScheme>(scheme), seed);
      const double best = brute_force(in).optimum.objective;
      EXPECT_GE(assignment_upper_bound(in), best - 1e-9 * std::max(1.0, best));
    }
  }
}

TEST(Bounds, IdenticalProbabilities) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Instance in = support::same_pi_instance(4 + seed % 8, seed);
    const auto s = solve_identical_prob(in);
    const double best = brute_force(in).optimum.objective;
    EXPECT_NEAR(s.objective, best, 1e-9 * std::max(1.0, best));
    EXPECT_NEAR(greedy_select(in).objective, best, 1e-9 * std::max(1.0, best));
    EXPECT_EQ(s.stats.subsets_evaluated, in.size() + 1);
  }
  EXPECT_THROW((void)solve_identical_prob(fixtures::four_job_walkthrough()), InputError);
}

TEST(Bounds, MilpExportShapes) {
  const Instance in = fixtures::four_job_walkthrough();
  const std::string none = export_milp(in, Refinement::None);
  EXPECT_NE(none.find("Maximize"), std::string::npos);
  EXPECT_NE(none.find("init_1"), std::string::npos);
  EXPECT_NE(none.find("Binaries"), std::string::npos);
  EXPECT_NE(none.find("End"), std::string::npos);
  const std::string pair = export_milp(in, Refinement::Pairwise);
  EXPECT_NE(pair.find("job_1"), std::string::npos);
  EXPECT_NE(pair.find("pos_1"), std::string::npos);
  EXPECT_NE(pair.find("uncr_"), std::string::npos);
  EXPECT_EQ(pair.find("u1_"), std::string::npos);
  const std::string bigm = export_milp(in, Refinement::BigM);
  EXPECT_NE(bigm.find("u1_"), std::string::npos);
  EXPECT_NE(bigm.find("d1_"), std::string::npos);
  EXPECT_EQ(to_string(Refinement::BigM), "bigm");
}

TEST(Bounds, ExternalSolveProtocol) {
  EXPECT_TRUE(std::holds_alternative<Unavailable>(external_solve("x", "")));
  EXPECT_TRUE(std::holds_alternative<Unavailable>(external_solve("x", "ujssp-no-such-solver-xyz")));

  const auto dir = std::filesystem::temp_directory_path() / "ujssp_bounds_test";
  std::filesystem::create_directories(dir);
  const auto script = dir / "fake_solver.sh";
  {
    std::ofstream s(script);
    s << "#!/bin/sh\necho 'OBJ 100'\necho 'BOUND 110'\necho 'ROOT 150'\n";
  }
  std::filesystem::permissions(script, std::filesystem::perms::owner_all);
  const auto r = external_solve("Maximize\n obj: x\nEnd\n", script.string());
  ASSERT_TRUE(std::holds_alternative<ExternalResult>(r));
  const auto& e = std::get<ExternalResult>(r);
  EXPECT_DOUBLE_EQ(e.objective, 100);
  EXPECT_DOUBLE_EQ(e.final_mip_gap, 0.1);
  ASSERT_TRUE(e.lp_gap);
  EXPECT_DOUBLE_EQ(*e.lp_gap, 0.5);

  const auto broken = dir / "broken.sh";
  {
    std::ofstream s(broken);
    s << "#!/bin/sh\necho nonsense\n";
  }
  std::filesystem::permissions(broken, std::filesystem::perms::owner_all);
  EXPECT_THROW((void)external_solve("x", broken.string()), AdapterError);
  std::filesystem::remove_all(dir);
}
