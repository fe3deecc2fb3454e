// SPDX-License-Identifier: Apache-2.0

#include "rpo/mip.h"

#include <gtest/gtest.h>

#include <random>

#include "rpo/baselines.h"
#include "rpo/datagen.h"
#include "test_util.h"

namespace rpo {
namespace {

double GridMax(const Dataset& data, const Box& box, int steps) {
  double best = -kInfinity;
  LinearModel m = LinearModel::Zero(2);
  for (int a = 0; a <= steps; ++a) {
    m.beta[0] = box.lower[0] + (box.upper[0] - box.lower[0]) * a / steps;
    for (int b = 0; b <= steps; ++b) {
      m.beta[1] = box.lower[1] + (box.upper[1] - box.lower[1]) * b / steps;
      best = std::max(best, AverageReward(m, data));
    }
  }
  return best;
}

TEST(SolveMipTest, SingleSampleHandExample) {
  Dataset data(1, {{{1.0}, 1.0, 0.2}});
  Box box;
  box.lower = {-1.0};
  box.upper = {2.0};
  const MipResult r = SolveMip(BuildMip(data, box), data);
  EXPECT_EQ(r.status, MipStatus::kOptimal);
  EXPECT_NEAR(r.incumbent_reward, 1.0, 1e-9);
  EXPECT_EQ(r.nodes_explored, 1);
}

TEST(SolveMipTest, SingleSampleNeedsOneNode) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const Dataset data = testing::RandomDataset(rng, 2, 1);
    const MipResult r = SolveMip(BuildMip(data, Box::Symmetric(2, 3.0, t % 2 == 0)), data);
    EXPECT_EQ(r.status, MipStatus::kOptimal);
    EXPECT_EQ(r.nodes_explored, 1) << "trial " << t;
  }
}

TEST(SolveMipTest, GapFamilyTwo) {
  const Instance inst = GenerateLpGapFamily(2);
  const MipResult r = SolveMip(BuildMip(inst.data, inst.box), inst.data);
  EXPECT_EQ(r.status, MipStatus::kOptimal);
  EXPECT_NEAR(r.incumbent_reward, 0.25, 1e-9);
  EXPECT_NEAR(r.root_bound, 7.0 / 12.0, 1e-9);
}

TEST(SolveMipTest, MatchesBreakpointOracle) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> size(1, 10);
  for (int t = 0; t < 50; ++t) {
    const Dataset data = testing::RandomDataset(rng, 1, size(rng));
    const Box box = Box::Symmetric(1, 3.0, false);
    const OracleResult oracle = BreakpointOracle(data, box);
    const MipResult r = SolveMip(BuildMip(data, box), data);
    EXPECT_EQ(r.status, MipStatus::kOptimal);
    EXPECT_NEAR(r.incumbent_reward, oracle.reward, 1e-6) << "trial " << t;
    EXPECT_LE(r.incumbent_reward, r.dual_bound + 1e-9);
  }
}

TEST(SolveMipTest, AtLeastFineGrid) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> size(2, 6);
  for (int t = 0; t < 5; ++t) {
    const Dataset data = testing::RandomDataset(rng, 2, size(rng));
    const Box box = Box::Symmetric(2, 2.0, false);
    const MipResult r = SolveMip(BuildMip(data, box), data);
    EXPECT_EQ(r.status, MipStatus::kOptimal);
    EXPECT_GE(r.incumbent_reward, GridMax(data, box, 400) - 1e-4) << "trial " << t;
  }
}

TEST(SolveMipTest, BoundChain) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 20; ++t) {
    const Dataset data = testing::RandomDataset(rng, 3, 8);
    const Box box = Box::Symmetric(3, 1.0, true);
    const ReserveFormulation lp = BuildLp(data, box);
    const LpSolution relax = SolveLp(lp.model);
    ASSERT_EQ(relax.status, LpStatus::kOptimal);
    const double extracted = AverageReward(ExtractModel(relax.values, lp), data);
    const MipResult r = SolveMip(BuildMip(data, box), data);
    ASSERT_EQ(r.status, MipStatus::kOptimal);
    EXPECT_LE(extracted, r.incumbent_reward + 1e-9);
    EXPECT_LE(r.incumbent_reward, r.dual_bound + 1e-9);
    EXPECT_LE(r.dual_bound, r.root_bound + 1e-9);
    EXPECT_NEAR(r.root_bound, relax.objective, 1e-7);
    EXPECT_GE(r.incumbent_reward, OptimalConstantPrice(data).reward - 1e-12);
    EXPECT_TRUE(InsideBox(*r.incumbent, box));
  }
}

TEST(SolveMipTest, RejectsNonPositiveTimeLimit) {
  Dataset data(1, {{{1.0}, 1.0, 0.2}});
  MipOptions options;
  options.time_limit_seconds = 0.0;
  EXPECT_THROW(SolveMip(BuildMip(data, Box::Symmetric(1, 1.0, false)), data, options),
               std::invalid_argument);
}

TEST(SolveMipTest, NodeLimitKeepsValidBounds) {
  std::mt19937_64 rng(45);
  const Dataset data = testing::RandomDataset(rng, 3, 25);
  const ReserveFormulation f = BuildMip(data, Box::Symmetric(3, 1.0, true));
  MipOptions options;
  options.node_limit = 3;
  options.root_dive = false;
  const MipResult r = SolveMip(f, data, options);
  EXPECT_LE(r.nodes_explored, 3);
  EXPECT_TRUE(r.incumbent.has_value());
  EXPECT_LE(r.incumbent_reward, r.dual_bound + 1e-9);
  const MipResult full = SolveMip(f, data);
  ASSERT_EQ(full.status, MipStatus::kOptimal);
  EXPECT_GE(r.dual_bound, full.incumbent_reward - 1e-7);
  EXPECT_LE(r.incumbent_reward, full.incumbent_reward + 1e-9);
}

TEST(SolveMipTest, Deterministic) {
  std::mt19937_64 rng(46);
  const Dataset data = testing::RandomDataset(rng, 2, 15);
  const ReserveFormulation f = BuildMip(data, Box::Symmetric(2, 2.0, true));
  const MipResult a = SolveMip(f, data);
  const MipResult b = SolveMip(f, data);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_EQ(a.incumbent_reward, b.incumbent_reward);
  EXPECT_EQ(a.incumbent->beta, b.incumbent->beta);
  EXPECT_EQ(a.lp_iterations, b.lp_iterations);
}

TEST(SolveMipTest, ProgressLog) {
  std::mt19937_64 rng(47);
  const Dataset data = testing::RandomDataset(rng, 2, 12);
  MipOptions options;
  options.log_every = 1;
  std::vector<MipProgress> seen;
  options.log = [&](const MipProgress& p) { seen.push_back(p); };
  const MipResult r = SolveMip(BuildMip(data, Box::Symmetric(2, 2.0, true)), data, options);
  ASSERT_FALSE(seen.empty());
  EXPECT_EQ(seen.back().nodes, r.nodes_explored);
  EXPECT_EQ(seen.back().incumbent_reward, r.incumbent_reward);
  for (const MipProgress& p : seen) EXPECT_GE(p.dual_bound, p.incumbent_reward - 1e-9);
}

TEST(RootNodeSolveTest, BoundsAndExtraction) {
  std::mt19937_64 rng(48);
  for (int t = 0; t < 10; ++t) {
    const Dataset data = testing::RandomDataset(rng, 3, 20);
    const Box box = Box::Symmetric(3, 1.0, true);
    const ReserveFormulation lp = BuildLp(data, box);
    const LpSolution relax = SolveLp(lp.model);
    const double extracted = AverageReward(ExtractModel(relax.values, lp), data);
    const MipResult r = RootNodeSolve(BuildMip(data, box), data);
    EXPECT_GE(r.incumbent_reward, extracted - 1e-12);
    EXPECT_LE(r.incumbent_reward, r.dual_bound + 1e-9);
    EXPECT_NEAR(r.dual_bound, relax.objective, 1e-7);
    EXPECT_EQ(r.nodes_explored, 1);
  }
}

TEST(RootNodeSolveTest, IntegralRootMatchesMip) {
  Dataset data(1, {{{1.0}, 1.0, 0.2}});
  const ReserveFormulation f = BuildMip(data, Box::Symmetric(1, 2.0, false));
  const MipResult root = RootNodeSolve(f, data);
  const MipResult full = SolveMip(f, data);
  EXPECT_EQ(root.status, MipStatus::kOptimal);
  EXPECT_EQ(root.incumbent_reward, full.incumbent_reward);
}

TEST(BreakpointOracleTest, HandEnumeration) {
  Dataset data(1, {{{1.0}, 1.0, 0.0}, {{1.0}, 2.0, 0.0}});
  Box box;
  box.lower = {0.0};
  box.upper = {3.0};
  const OracleResult r = BreakpointOracle(data, box);
  EXPECT_DOUBLE_EQ(r.reward, 1.0);
  EXPECT_DOUBLE_EQ(r.beta, 1.0);
}

TEST(BreakpointOracleTest, SingleSample) {
  Dataset data(1, {{{0.5}, 1.5, 0.25}});
  const OracleResult r = BreakpointOracle(data, Box::Symmetric(1, 10.0, false));
  EXPECT_DOUBLE_EQ(r.reward, 1.5);
  EXPECT_NEAR(r.beta, 3.0, 1e-12);
}

TEST(BreakpointOracleTest, AgreesWithGrid) {
  std::mt19937_64 rng(49);
  for (int t = 0; t < 30; ++t) {
    const Dataset data = testing::RandomDataset(rng, 1, 8);
    const Box box = Box::Symmetric(1, 2.0, false);
    const OracleResult r = BreakpointOracle(data, box);
    LinearModel m = LinearModel::Zero(1);
    for (int k = 0; k <= 20000; ++k) {
      m.beta[0] = -2.0 + 4.0 * k / 20000;
      EXPECT_LE(AverageReward(m, data), r.reward + 1e-12);
    }
  }
}

TEST(BreakpointOracleTest, RejectsUnsupportedShapes) {
  Dataset two(2, {{{1.0, 1.0}, 1.0, 0.0}});
  EXPECT_THROW(BreakpointOracle(two, Box::Symmetric(2, 1.0, false)),
               std::invalid_argument);
  Dataset one(1, {{{1.0}, 1.0, 0.0}});
  EXPECT_THROW(BreakpointOracle(one, Box::Symmetric(1, 1.0, true)),
               std::invalid_argument);
}

}  // namespace
}  // namespace rpo
