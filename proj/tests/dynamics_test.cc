// Copyright 2026 The privdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privdiff/dynamics.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "testing/status_matchers.h"

namespace privdiff {
namespace {

using ::privdiff::testing::StatusIs;
using ::testing::HasSubstr;
using ::testing::StartsWith;

DiffusionParams Params(double b1, double d1, double b2, double d2) {
  return *DiffusionParams::Create(b1, d1, b2, d2);
}

// Right-hand side evaluated straight from the dense adjacency matrix.
NodeDerivative DenseDerivative(const NodeState& x, const Graph& g,
                               const DiffusionParams& p, const AdvocacyRates& r) {
  const size_t n = x.size();
  NodeDerivative d{std::vector<double>(n), std::vector<double>(n)};
  for (size_t i = 0; i < n; ++i) {
    double in1 = 0.0, in2 = 0.0;
    for (size_t j = 0; j < n; ++j) {
      if (!g.HasEdge(i, j)) continue;
      in1 += r.r11 * x.p1[j] + r.r21 * x.p2[j];
      in2 += r.r12 * x.p1[j] + r.r22 * x.p2[j];
    }
    const double s = 1.0 - x.p1[i] - x.p2[i];
    d.dp1[i] = -p.delta1() * x.p1[i] + p.beta1() * s * in1;
    d.dp2[i] = -p.delta2() * x.p2[i] + p.beta2() * s * in2;
  }
  return d;
}

NodeState RandomState(size_t n, std::mt19937_64& rng, double lo = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  NodeState x = NodeState::Zeros(n);
  for (size_t i = 0; i < n; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const double total = a + b + c;
    x.p1[i] = lo + (1.0 - 3 * lo) * a / total;
    x.p2[i] = lo + (1.0 - 3 * lo) * b / total;
  }
  return x;
}

double MaxDiff(const NodeState& a, const NodeState& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    m = std::max({m, std::abs(a.p1[i] - b.p1[i]), std::abs(a.p2[i] - b.p2[i])});
  }
  return m;
}

TEST(DerivativeTest, ZeroStateIsFixed) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, RingGraph(6));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      NodeDerivative d, Derivative(NodeState::Zeros(6), g, Params(1, 1, 1, 1),
                                   *PrivacyScheme::Create(0.5, 0.3, 0.2, 0.6)));
  EXPECT_EQ(d.MaxAbs(), 0.0);
}

TEST(DerivativeTest, FullyAdoptedNodeOnlyHeals) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, CompleteGraph(4));
  NodeState x = NodeState::Zeros(4);
  x.p1 = {1.0, 0.2, 0.1, 0.3};
  x.p2 = {0.0, 0.3, 0.4, 0.1};
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      NodeDerivative d,
      Derivative(x, g, Params(0.7, 0.4, 0.5, 0.9), *PrivacyScheme::Perfect(0.3, 0.3)));
  EXPECT_DOUBLE_EQ(d.dp1[0], -0.4);
  EXPECT_DOUBLE_EQ(d.dp2[0], 0.0);
}

TEST(DerivativeTest, TwoNodeHandEvaluation) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, CompleteGraph(2));
  NodeState x = NodeState::Zeros(2);
  x.p1[1] = 0.5;
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      NodeDerivative d,
      Derivative(x, g, Params(1, 1, 1, 1), *PrivacyScheme::Perfect(0.5, 0.5)));
  // Node 0: s = 1, neighbor contributes r11 * 0.5.
  EXPECT_DOUBLE_EQ(d.dp1[0], 1.0 * 1.0 * (0.5 * 0.5));
  EXPECT_DOUBLE_EQ(d.dp1[0], 0.25);
  // Node 1: healing only, since its neighbor has nothing.
  EXPECT_DOUBLE_EQ(d.dp1[1], -0.5);
}

TEST(DerivativeTest, MatchesDenseEvaluation) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, ErdosRenyiGraph(30, 0.2, 100 + trial));
    const NodeState x = RandomState(30, rng);
    const DiffusionParams p = Params(0.3 + trial * 0.01, 0.8, 0.5, 1.1);
    const PrivacyScheme s = *PrivacyScheme::Create(0.45, 0.35, 0.15, 0.7);
    PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeDerivative d, Derivative(x, g, p, s));
    const NodeDerivative oracle = DenseDerivative(x, g, p, s.rates());
    for (size_t i = 0; i < 30; ++i) {
      EXPECT_NEAR(d.dp1[i], oracle.dp1[i], 1e-14);
      EXPECT_NEAR(d.dp2[i], oracle.dp2[i], 1e-14);
    }
  }
}

TEST(DerivativeTest, RejectsDimensionMismatch) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, RingGraph(5));
  EXPECT_THAT(Derivative(NodeState::Zeros(4), g, Params(1, 1, 1, 1), MakeObliviousScheme()),
              StatusIs(absl::StatusCode::kInvalidArgument, ::testing::_));
}

TEST(DerivativeTest, CompleteGraph2000IsFast) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, CompleteGraph(2000));
  std::mt19937_64 rng(1);
  const NodeState x = RandomState(2000, rng);
  const auto scheme = *PrivacyScheme::Create(0.5, 0.3, 0.2, 0.6);
  PRIVDIFF_ASSERT_OK(Derivative(x, g, Params(1, 1, 1, 1), scheme));  // warm-up
  const auto start = std::chrono::steady_clock::now();
  constexpr int kReps = 5;
  for (int k = 0; k < kReps; ++k) {
    PRIVDIFF_ASSERT_OK(Derivative(x, g, Params(1, 1, 1, 1), scheme));
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start).count() / kReps;
  EXPECT_LT(ms, 10.0);
}

TEST(ValidateNodeStateTest, RejectsOutOfSimplex) {
  EXPECT_FALSE(ValidateNodeState({{0.6}, {0.6}}).ok());
  EXPECT_FALSE(ValidateNodeState({{-0.1}, {0.0}}).ok());
  EXPECT_FALSE(ValidateNodeState({{0.1, 0.2}, {0.0}}).ok());
  EXPECT_TRUE(ValidateNodeState({{0.5}, {0.5}}).ok());
}

TEST(IntegrateTest, ZeroStateStaysZero) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, RingGraph(8));
  IntegrateOptions opts;
  opts.t_end = 5.0;
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      Trajectory t, Integrate(NodeState::Zeros(8), g, Params(2, 1, 2, 1),
                              *PrivacyScheme::Perfect(0.4, 0.4), opts));
  for (size_t k = 0; k < t.times.size(); ++k) {
    EXPECT_EQ(t.agg_p1[k], 0.0);
    EXPECT_EQ(t.agg_p2[k], 0.0);
  }
  EXPECT_EQ(t.times.back(), 5.0);
}

TEST(IntegrateTest, TimesIncreaseAndRecordsAreCapped) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, RingGraph(8));
  IntegrateOptions opts;
  opts.t_end = 30.0;
  opts.dt = 0.001;
  opts.max_records = 101;
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeState x0, UniformSeed(8, 0.1, 0.1));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      Trajectory t, Integrate(x0, g, Params(1, 1, 1, 1), MakeObliviousScheme(), opts));
  EXPECT_LE(t.times.size(), 101);
  EXPECT_EQ(t.states.size(), t.times.size());
  EXPECT_EQ(t.steps, 30000);
  for (size_t k = 1; k < t.times.size(); ++k) EXPECT_GT(t.times[k], t.times[k - 1]);
  EXPECT_EQ(t.times.back(), 30.0);
}

TEST(IntegrateTest, CompleteGraphPerfectSchemeReachesPositivePlateau) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, CompleteGraph(50));
  // sigma1 gamma1 + sigma2 gamma2 = 0.04 > 1/49.
  const DiffusionParams p = Params(0.06, 1.0, 0.02, 1.0);
  const auto scheme = *PrivacyScheme::Perfect(0.5, 0.5);
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeState x0, UniformSeed(50, 0.01, 0.01));
  IntegrateOptions opts;
  opts.t_end = 400.0;
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Trajectory t, Integrate(x0, g, p, scheme, opts));
  EXPECT_GT(t.agg_p1.back(), 1.0);
  EXPECT_GT(t.agg_p2.back(), 0.3);
  EXPECT_LT(t.final_derivative_norm, 1e-8);
}

TEST(IntegrateTest, SubthresholdDecaysToZero) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, ErdosRenyiGraph(40, 0.2, 3));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(SpectralResult s, LargestEigenvalue(g));
  const double t = 1.0 / s.lambda_max;
  const DiffusionParams p = Params(0.8 * t, 1.0, 0.6 * t, 1.0);
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeState x0, UniformSeed(40, 0.1, 0.1));
  IntegrateOptions opts;
  opts.t_end = 400.0;
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      Trajectory traj,
      Integrate(x0, g, p, *PrivacyScheme::Create(0.5, 0.3, 0.2, 0.6), opts));
  EXPECT_LT(traj.agg_p1.back() + traj.agg_p2.back(), 1e-8);
}

TEST(IntegrateTest, SteadyStateRuleStopsEarly) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, CompleteGraph(20));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeState x0, UniformSeed(20, 0.1, 0.1));
  IntegrateOptions opts;
  opts.t_end = 1e4;
  opts.stop = SteadyStateRule{};
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      Trajectory t,
      Integrate(x0, g, Params(0.2, 1, 0.1, 1), *PrivacyScheme::Perfect(0.5, 0.4), opts));
  EXPECT_TRUE(t.stopped_early);
  EXPECT_LT(t.times.back(), 1e4);
  EXPECT_LT(t.final_derivative_norm, 1e-10);
}

TEST(IntegrateTest, DivergenceAborts) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, CompleteGraph(30));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeState x0, UniformSeed(30, 0.3, 0.3));
  IntegrateOptions opts;
  opts.t_end = 10.0;
  opts.dt = 5.0;
  EXPECT_THAT(Integrate(x0, g, Params(5, 1, 5, 1), MakeObliviousScheme(), opts),
              StatusIs(absl::StatusCode::kAborted, HasSubstr("reduce dt")));
}

TEST(IntegrateTest, RejectsBadOptions) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, RingGraph(4));
  IntegrateOptions opts;
  opts.t_end = 1.0;
  opts.dt = -0.1;
  EXPECT_FALSE(Integrate(NodeState::Zeros(4), g, Params(1, 1, 1, 1),
                         MakeObliviousScheme(), opts).ok());
  opts.dt = 0.1;
  opts.t_end = -1.0;
  EXPECT_FALSE(Integrate(NodeState::Zeros(4), g, Params(1, 1, 1, 1),
                         MakeObliviousScheme(), opts).ok());
}

TEST(IntegrateTest, ForwardInvarianceNeedsLittleClipping) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, ErdosRenyiGraph(40, 0.2, 50 + trial));
    const NodeState x0 = RandomState(40, rng, 1e-6);
    const DiffusionParams p = Params(0.5, 0.7, 0.9, 1.3);
    IntegrateOptions opts;
    opts.t_end = 20.0;
    PRIVDIFF_ASSERT_OK_AND_ASSIGN(
        Trajectory t, Integrate(x0, g, p, *PrivacyScheme::Create(0.6, 0.2, 0.1, 0.5), opts));
    EXPECT_LT(t.max_step_clip, 1e-8);
    EXPECT_LT(t.total_clip / static_cast<double>(t.steps), 1e-8);
  }
}

TEST(IntegrateTest, FourthOrderConvergence) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, ErdosRenyiGraph(12, 0.4, 9));
  std::mt19937_64 rng(2);
  const NodeState x0 = RandomState(12, rng, 0.01);
  const DiffusionParams p = Params(0.6, 0.9, 0.4, 0.7);
  const auto scheme = *PrivacyScheme::Create(0.5, 0.3, 0.2, 0.6);
  std::vector<NodeState> finals;
  for (double dt : {0.2, 0.1, 0.05}) {
    IntegrateOptions opts;
    opts.t_end = 4.0;
    opts.dt = dt;
    PRIVDIFF_ASSERT_OK_AND_ASSIGN(Trajectory t, Integrate(x0, g, p, scheme, opts));
    finals.push_back(t.final_state());
  }
  const double ratio = MaxDiff(finals[0], finals[1]) / MaxDiff(finals[1], finals[2]);
  EXPECT_NEAR(ratio, 16.0, 16.0 * 0.3);
}

TEST(IntegrateTest, PerfectSchemeRatioPreservedWithEqualHealing) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, ErdosRenyiGraph(30, 0.2, 21));
  const DiffusionParams p = Params(0.5, 0.8, 0.3, 0.8);
  const double g1 = 0.3, g2 = 0.4;
  const double h = (p.sigma1() * g1) / (p.sigma2() * g2);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.01, 0.2);
  NodeState x0 = NodeState::Zeros(30);
  for (size_t i = 0; i < 30; ++i) {
    x0.p2[i] = u(rng);
    x0.p1[i] = h * x0.p2[i];
  }
  IntegrateOptions opts;
  opts.t_end = 30.0;
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      Trajectory t, Integrate(x0, g, p, *PrivacyScheme::Perfect(g1, g2), opts));
  for (const NodeState& x : t.states) {
    for (size_t i = 0; i < 30; ++i) {
      EXPECT_NEAR(x.p1[i], h * x.p2[i], 1e-12);
    }
  }
}

TEST(ObliviousBaselineTest, StrongerProductWins) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, ErdosRenyiGraph(60, 0.15, 6));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(SpectralResult s, LargestEigenvalue(g));
  const double t = 1.0 / s.lambda_max;
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeState x0, UniformSeed(60, 0.05, 0.05));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      Trajectory traj,
      PrivacyObliviousBaseline(x0, g, Params(4 * t, 1, 2.5 * t, 1), 300.0));
  EXPECT_GT(traj.agg_p1.back(), 1.0);
  EXPECT_LT(traj.agg_p2.back(), 1e-6);
}

TEST(ObliviousBaselineTest, EqualStrengthsGiveSymmetricTrajectories) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, ErdosRenyiGraph(40, 0.2, 6));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeState x0, UniformSeed(40, 0.05, 0.05));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      Trajectory traj, PrivacyObliviousBaseline(x0, g, Params(0.3, 1, 0.3, 1), 20.0));
  for (size_t k = 0; k < traj.times.size(); ++k) {
    EXPECT_EQ(traj.agg_p1[k], traj.agg_p2[k]);
  }
}

TEST(ObliviousBaselineTest, ZeroSeedsStayZero) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, RingGraph(10));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      Trajectory traj,
      PrivacyObliviousBaseline(NodeState::Zeros(10), g, Params(3, 1, 2, 1), 10.0));
  EXPECT_EQ(traj.agg_p1.back(), 0.0);
  EXPECT_EQ(traj.agg_p2.back(), 0.0);
}

TEST(SeedTest, UniformAndRandomSubset) {
  EXPECT_FALSE(UniformSeed(5, 0.7, 0.4).ok());
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeState x, RandomSubsetSeed(20, 3, 4, 9));
  EXPECT_EQ(x.Aggregate1(), 3.0);
  EXPECT_EQ(x.Aggregate2(), 4.0);
  for (size_t i = 0; i < 20; ++i) EXPECT_LE(x.p1[i] + x.p2[i], 1.0);
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeState y, RandomSubsetSeed(20, 3, 4, 9));
  EXPECT_EQ(x.p1, y.p1);
  EXPECT_FALSE(RandomSubsetSeed(5, 3, 3, 1).ok());
}

TEST(TrajectoryCsvTest, HeaderAndLineEndings) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, RingGraph(3));
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(NodeState x0, UniformSeed(3, 0.1, 0.2));
  IntegrateOptions opts;
  opts.t_end = 0.5;
  opts.dt = 0.25;
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(
      Trajectory t, Integrate(x0, g, Params(1, 1, 1, 1), MakeObliviousScheme(), opts));
  std::ostringstream narrow, wide;
  WriteTrajectoryCsv(t, false, narrow);
  WriteTrajectoryCsv(t, true, wide);
  EXPECT_THAT(narrow.str(), StartsWith("t,agg_p1,agg_p2\r\n0,"));
  EXPECT_THAT(wide.str(), StartsWith("t,p1_0,p1_1,p1_2,p2_0,p2_1,p2_2\r\n"));
  const std::string text = narrow.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}

}  // namespace
}  // namespace privdiff
