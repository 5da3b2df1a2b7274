// Copyright 2026 The privimmune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "privimmune/maxdeg.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace privimmune {
namespace {

using ::privimmune::testing::CoversAll;
using ::privimmune::testing::DegreesByScan;
using ::privimmune::testing::MakeGraph;
using ::privimmune::testing::RandomEdges;
using ::privimmune::testing::RandomGraph;

Graph Star(int32_t leaves) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return MakeGraph(leaves + 1, edges);
}

TEST(MaxDegInstanceTest, StarExample) {
  const MultiCoverInstance inst = BuildMaxDegInstance(Star(5), 2);
  EXPECT_EQ(inst.requirement(0), 3);
  for (int32_t leaf = 1; leaf <= 5; ++leaf) {
    EXPECT_EQ(inst.requirement(leaf), 0);
    const std::vector<SetEntry> want = {{0, 1}, {leaf, kUnbounded}};
    EXPECT_EQ(
        std::vector<SetEntry>(inst.set(leaf).begin(), inst.set(leaf).end()),
        want);
  }
  std::vector<SetEntry> center = {{0, kUnbounded}};
  for (int32_t leaf = 1; leaf <= 5; ++leaf) center.push_back({leaf, 1});
  EXPECT_EQ(std::vector<SetEntry>(inst.set(0).begin(), inst.set(0).end()),
            center);
}

TEST(MaxDegInstanceTest, RequirementsMatchDegreeScan) {
  std::mt19937_64 gen(1);
  for (int rep = 0; rep < 50; ++rep) {
    const std::vector<Edge> edges = RandomEdges(10, 0.5, gen);
    const MultiCoverInstance inst =
        BuildMaxDegInstance(MakeGraph(10, edges), 3);
    const std::vector<int32_t> deg =
        DegreesByScan(10, edges, std::vector<bool>(10, false));
    for (int32_t v = 0; v < 10; ++v) {
      EXPECT_EQ(inst.requirement(v), std::max(deg[v] - 3, 0));
    }
  }
}

TEST(MaxDegInstanceTest, LargeTargetHasNoWork) {
  std::mt19937_64 gen(2);
  const Graph g = RandomGraph(15, 0.3, gen);
  EXPECT_EQ(BuildMaxDegInstance(g, MaxDegree(g)).total_requirement(), 0);
}

TEST(MaxDegParametersTest, EdgeModelRescales) {
  const PrivacyBudget b{2.0, 0.01, 0.0};
  const MaxDegParameters p = DeriveMaxDegParameters(b, NeighborModel::kEdge);
  EXPECT_DOUBLE_EQ(p.cover_epsilon, 0.5);
  EXPECT_DOUBLE_EQ(p.cover_delta, 0.01 / (4.0 * std::exp(1.5)));
  EXPECT_DOUBLE_EQ(p.eps_prime, MulticoverEpsPrime(0.5, p.cover_delta));
  const MaxDegParameters m =
      DeriveMaxDegParameters(b, NeighborModel::kMultiset);
  EXPECT_DOUBLE_EQ(m.cover_epsilon, 2.0);
  EXPECT_DOUBLE_EQ(m.cover_delta, 0.01);
}

TEST(PrivMaxDegImplicitTest, EmptyWhenTargetIsMet) {
  std::mt19937_64 gen(3);
  const Graph g = RandomGraph(20, 0.2, gen);
  Rng rng(3);
  MaxDegTask task{g, MaxDegree(g), {1.0, 0.01, 0.0}};
  EXPECT_TRUE(PrivMaxDegImplicit(task, rng)->removed.empty());
}

TEST(PrivMaxDegImplicitTest, StarAlwaysMeetsTargetAndMinimalSetsHoldCenter) {
  const Graph g = Star(5);
  Rng rng(4);
  MaxDegTask task{g, 2, {1.0, 0.01, 0.0}};
  size_t smallest = g.num_nodes() + 1;
  std::vector<std::vector<NodeId>> sets;
  for (int t = 0; t < 1000; ++t) {
    ImplicitMaxDegResult r = *PrivMaxDegImplicit(task, rng);
    const NodeMask mask = *RemoveNodes(g, r.removed);
    ASSERT_LE(MaxDegree(g, mask), 2);
    EXPECT_EQ(r.residual_max_degree, MaxDegree(g, mask));
    smallest = std::min(smallest, r.removed.size());
    sets.push_back(r.removed);
  }
  for (const auto& s : sets) {
    if (s.size() != smallest) continue;
    EXPECT_NE(std::find(s.begin(), s.end(), 0), s.end());
  }
}

TEST(PrivMaxDegImplicitTest, RandomGraphsAlwaysCovered) {
  std::mt19937_64 gen(5);
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const Graph g = RandomGraph(30, 0.2, gen);
    for (NeighborModel model :
         {NeighborModel::kEdge, NeighborModel::kMultiset}) {
      MaxDegTask task{g, 2, {0.5, 0.01, 0.0}, model};
      ImplicitMaxDegResult r = *PrivMaxDegImplicit(task, rng);
      EXPECT_LE(r.residual_max_degree, 2);
      EXPECT_TRUE(
          CoversAll(BuildMaxDegInstance(g, 2),
                    std::vector<int32_t>(r.removed.begin(), r.removed.end())));
    }
  }
}

TEST(PrivMaxDegImplicitTest, RejectsBadTask) {
  const Graph g = Star(3);
  Rng rng(1);
  EXPECT_FALSE(
      PrivMaxDegImplicit(MaxDegTask{g, -1, {1.0, 0.1, 0.0}}, rng).ok());
  EXPECT_FALSE(PrivMaxDegImplicit(MaxDegTask{g, 1, {0.0, 0.1, 0.0}}, rng).ok());
}

TEST(PrivMaxDegImplicitTest, ReportCarriesDerivedParameters) {
  const Graph g = Star(5);
  Rng rng(6);
  ImplicitMaxDegResult r =
      *PrivMaxDegImplicit(MaxDegTask{g, 2, {2.0, 0.01, 0.0}}, rng);
  EXPECT_EQ(r.report.stages.size(), 1u);
  EXPECT_DOUBLE_EQ(r.report.Parameter("cover_epsilon"), 0.5);
  EXPECT_DOUBLE_EQ(r.report.Parameter("eps_prime"), r.parameters.eps_prime);
  EXPECT_NE(r.report.ToJson().find("\"neighbor_model\": \"edge\""),
            std::string::npos);
}

TEST(PrivMaxDegExplicitTest, RefusesWithoutStoppingBudget) {
  const Graph g = Star(5);
  Rng rng(1);
  absl::StatusOr<ExplicitSolution> r =
      PrivMaxDegExplicit(MaxDegTask{g, 2, {1.0, 0.01, 0.0}}, rng);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(PrivMaxDegExplicitTest, StopsAtOnceWhenTargetIsMet) {
  std::mt19937_64 gen(7);
  const Graph g = RandomGraph(60, 0.05, gen);
  Rng rng(7);
  int zero = 0;
  for (int t = 0; t < 200; ++t) {
    ExplicitSolution r =
        *PrivMaxDegExplicit(MaxDegTask{g, MaxDegree(g), {1.0, 0.01, 1.0}}, rng);
    zero += r.k == 0;
  }
  EXPECT_GE(zero, 190);
}

TEST(PrivMaxDegExplicitTest, PaddedStarRemovesCenterFirst) {
  // K_{1,20} plus isolated padding so the threshold sits below the center's
  // initial utility of 19.
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= 20; ++v) edges.push_back({0, v});
  const Graph g = MakeGraph(40, edges);
  Rng rng(8);
  MaxDegTask task{g, 1, {40.0, 0.1, 4.0}, NeighborModel::kMultiset};
  const MaxDegParameters p = DeriveMaxDegParameters(task.budget, task.model);
  ASSERT_LT(6.0 * std::log(40.0) / p.eps_prime, 19.0);
  int center_first = 0;
  for (int t = 0; t < 200; ++t) {
    ExplicitSolution r = *PrivMaxDegExplicit(task, rng);
    center_first += r.permutation.permutation[0] == 0;
    EXPECT_LE(r.k, 5);
    const double slack = 30.0 * std::log(40.0) / p.eps_prime;
    EXPECT_LE(r.residual_max_degree, 1 + slack);
  }
  EXPECT_GE(center_first, 195);
}

TEST(PrivMaxDegExplicitTest, ReusesThePermutation) {
  std::mt19937_64 gen(9);
  const Graph g = RandomGraph(40, 0.2, gen);
  MaxDegTask task{g, 3, {4.0, 0.01, 1.0}, NeighborModel::kMultiset};
  Rng rng(9);
  ImplicitMaxDegResult implicit = *PrivMaxDegImplicit(task, rng);
  ExplicitSolution r = *ExplicitFromPermutation(task, implicit.solution, rng);
  EXPECT_EQ(r.permutation.permutation, implicit.solution.permutation);
  EXPECT_TRUE(std::equal(r.nodes.begin(), r.nodes.end(),
                         implicit.solution.permutation.begin()));
  EXPECT_EQ(r.residual_max_degree, MaxDegree(g, *RemoveNodes(g, r.nodes)));
  ASSERT_EQ(r.report.stages.size(), 2u);
  EXPECT_DOUBLE_EQ(r.report.stages[1].epsilon, 1.0);
}

TEST(PrivMaxDegExplicitTest, EdgeModelStopStageCostsFourEpsilon1) {
  const Graph g = Star(5);
  Rng rng(10);
  ExplicitSolution r =
      *PrivMaxDegExplicit(MaxDegTask{g, 2, {1.0, 0.01, 0.5}}, rng);
  ASSERT_EQ(r.report.stages.size(), 2u);
  EXPECT_DOUBLE_EQ(r.report.stages[1].epsilon, 2.0);
  EXPECT_DOUBLE_EQ(r.threshold, 6.0 * std::log(6.0) / r.parameters.eps_prime);
}

TEST(GreedyMaxDegTest, StarPicksCenter) {
  EXPECT_EQ(*GreedyMaxDeg(Star(5), 2), (std::vector<NodeId>{0}));
  EXPECT_FALSE(GreedyMaxDeg(Star(5), -1).ok());
}

}  // namespace
}  // namespace privimmune
