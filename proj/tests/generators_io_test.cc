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


#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "privimmune/edge_list.h"
#include "privimmune/generators.h"
#include "privimmune/records.h"

namespace privimmune {
namespace {

using ::privimmune::testing::ParseCsv;
using ::privimmune::testing::Slope;

TEST(GeneratorsTest, StarIsK1n) {
  const Graph g = *Generate({.kind = GeneratorKind::kStar, .n = 6});
  EXPECT_EQ(g.num_nodes(), 6);
  EXPECT_EQ(g.num_edges(), 5);
  EXPECT_EQ(g.degree_unchecked(0), 5);
  for (NodeId v = 1; v < 6; ++v) EXPECT_EQ(g.degree_unchecked(v), 1);
}

TEST(GeneratorsTest, CycleAndComplete) {
  const Graph c = *Generate({.kind = GeneratorKind::kCycle, .n = 7});
  EXPECT_EQ(c.num_edges(), 7);
  for (NodeId v = 0; v < 7; ++v) EXPECT_EQ(c.degree_unchecked(v), 2);
  const Graph k = *Generate({.kind = GeneratorKind::kComplete, .n = 6});
  EXPECT_EQ(k.num_edges(), 15);
}

TEST(GeneratorsTest, ErdosRenyiExtremes) {
  EXPECT_EQ(Generate({.n = 50, .p = 0.0, .seed = 1})->num_edges(), 0);
  EXPECT_EQ(Generate({.n = 20, .p = 1.0, .seed = 1})->num_edges(), 190);
}

TEST(GeneratorsTest, ErdosRenyiEdgeCountNearExpectation) {
  const Graph g = *Generate({.n = 2000, .p = 0.01, .seed = 2});
  const double expected = 0.01 * 2000 * 1999 / 2;
  const double sd = std::sqrt(expected);
  EXPECT_NEAR(static_cast<double>(g.num_edges()), expected, 5 * sd);
}

TEST(GeneratorsTest, DeterministicPerSeed) {
  const GeneratorSpec spec =
      *GeneratorSpec::Parse("chung-lu-powerlaw:n=500,gamma=2.2,seed=5");
  EXPECT_EQ(Generate(spec)->Edges(), Generate(spec)->Edges());
  GeneratorSpec other = spec;
  other.seed = 6;
  EXPECT_NE(Generate(spec)->Edges(), Generate(other)->Edges());
}

// Estimates the tail exponent from the log-log slope of sorted degree
// against rank over the unclipped head of the weight sequence.
double TailExponent(const Graph& g, int32_t ranks) {
  std::vector<int32_t> deg(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) deg[v] = g.degree_unchecked(v);
  std::sort(deg.begin(), deg.end(), std::greater<>());
  std::vector<double> x;
  std::vector<double> y;
  for (int32_t r = 0; r < ranks && deg[r] > 0; ++r) {
    x.push_back(std::log(r + 1.0));
    y.push_back(std::log(static_cast<double>(deg[r])));
  }
  return 1.0 + 1.0 / std::abs(Slope(x, y));
}

TEST(GeneratorsTest, ChungLuTailExponent) {
  for (double gamma : {2.1, 2.5, 3.0}) {
    for (uint64_t seed = 0; seed < 20; ++seed) {
      const Graph g = *Generate({.kind = GeneratorKind::kChungLuPowerLaw,
                                 .n = 20000,
                                 .gamma = gamma,
                                 .dmin = 1.0,
                                 .dmax = 300.0,
                                 .seed = seed});
      EXPECT_NEAR(TailExponent(g, 200), gamma, 0.3)
          << "gamma=" << gamma << " seed=" << seed;
    }
  }
}

TEST(GeneratorsTest, ChungLuExpectedDegrees) {
  // Average degree should track the mean weight.
  const GeneratorSpec spec{.kind = GeneratorKind::kChungLuPowerLaw,
                           .n = 5000,
                           .gamma = 2.5,
                           .dmin = 3.0,
                           .dmax = 70.0,
                           .seed = 3};
  double weight_sum = 0.0;
  for (int32_t i = 0; i < spec.n; ++i) {
    weight_sum += std::clamp(70.0 * std::pow(i + 1.0, -1.0 / 1.5), 3.0, 70.0);
  }
  const Graph g = *Generate(spec);
  EXPECT_NEAR(2.0 * g.num_edges() / spec.n, weight_sum / spec.n,
              0.05 * weight_sum / spec.n);
}

TEST(GeneratorSpecTest, ParseAndDescribe) {
  for (const char* text :
       {"erdos-renyi:n=100,p=0.05,seed=3", "star:n=6", "cycle:n=9,seed=2",
        "complete:n=4", "chung-lu-powerlaw:n=1000,gamma=2.5,dmin=2,dmax=40"}) {
    absl::StatusOr<GeneratorSpec> spec = GeneratorSpec::Parse(text);
    ASSERT_TRUE(spec.ok()) << text << ": " << spec.status();
    absl::StatusOr<GeneratorSpec> again =
        GeneratorSpec::Parse(spec->Describe());
    ASSERT_TRUE(again.ok()) << spec->Describe();
    EXPECT_EQ(again->Describe(), spec->Describe());
    EXPECT_EQ(Generate(*spec)->Edges(), Generate(*again)->Edges());
  }
  EXPECT_STREQ(GeneratorKindName(GeneratorKind::kChungLuPowerLaw),
               "chung-lu-powerlaw");
}

TEST(GeneratorSpecTest, RejectsBadSpecs) {
  for (const char* text :
       {"", "bter:n=10", "erdos-renyi:n=10,p=2", "erdos-renyi:n=-1,p=0.1",
        "star:n=6,bogus=1", "chung-lu-powerlaw:n=10,gamma=1",
        "chung-lu-powerlaw:n=10,dmin=5,dmax=2", "star:n=abc"}) {
    absl::StatusOr<GeneratorSpec> spec = GeneratorSpec::Parse(text);
    EXPECT_TRUE(!spec.ok() || !Generate(*spec).ok()) << text;
  }
}

TEST(EdgeListTest, ParsesPath) {
  const LoadedGraph loaded = *ParseEdgeList("0 1\n1 2\n");
  EXPECT_EQ(loaded.graph.num_nodes(), 3);
  EXPECT_EQ(loaded.graph.Edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(EdgeListTest, CountsSelfLoopsAndDuplicates) {
  const LoadedGraph loaded = *ParseEdgeList("1 1\n1,2\n2\t1\n# comment\n\n");
  EXPECT_EQ(loaded.self_loops_dropped, 1);
  EXPECT_EQ(loaded.duplicates_dropped, 1);
  EXPECT_EQ(loaded.graph.num_edges(), 1);
}

TEST(EdgeListTest, RemapsIdsAndRoundTrips) {
  const LoadedGraph loaded = *ParseEdgeList("100 7\n7 42\n42 100\n5 100\n");
  EXPECT_EQ(loaded.original_ids, (std::vector<int64_t>{5, 7, 42, 100}));
  const std::string text = FormatEdgeList(loaded.graph, loaded.original_ids);
  const LoadedGraph again = *ParseEdgeList(text);
  EXPECT_EQ(again.original_ids, loaded.original_ids);
  EXPECT_EQ(again.graph.Edges(), loaded.graph.Edges());
  EXPECT_EQ(FormatIdMap(loaded.original_ids), "0 5\n1 7\n2 42\n3 100\n");
}

TEST(EdgeListTest, ReportsBadLines) {
  absl::StatusOr<LoadedGraph> bad = ParseEdgeList("0 1\n1 2 3\n");
  ASSERT_FALSE(bad.ok());
  EXPECT_NE(bad.status().message().find("line 2"), std::string::npos);
  EXPECT_FALSE(ParseEdgeList("0 x\n").ok());
  EXPECT_EQ(LoadEdgeList("/nonexistent/graph.txt").status().code(),
            absl::StatusCode::kNotFound);
}

TEST(EdgeListTest, FileRoundTrip) {
  const Graph g = *Generate({.n = 60, .p = 0.1, .seed = 4});
  const std::string path = ::testing::TempDir() + "/privimmune_edges.txt";
  ASSERT_TRUE(SaveEdgeList(g, path).ok());
  const LoadedGraph back = *LoadEdgeList(path);
  std::vector<Edge> mapped;
  for (auto [u, v] : back.graph.Edges()) {
    mapped.push_back({static_cast<NodeId>(back.original_ids[u]),
                      static_cast<NodeId>(back.original_ids[v])});
  }
  std::sort(mapped.begin(), mapped.end());
  EXPECT_EQ(mapped, g.Edges());
  std::remove(path.c_str());
}

TEST(NodeListTest, RoundTrip) {
  const std::vector<int64_t> ids = {3, 17, 4};
  EXPECT_EQ(*ParseNodeList(FormatNodeList(ids)), ids);
  EXPECT_FALSE(ParseNodeList("1\nfoo\n").ok());
}

TEST(RecordsTest, CsvRoundTrip) {
  ExperimentRecord a{.graph = "star:n=6",
                     .algorithm = "privmaxdeg-implicit",
                     .epsilon = 0.5,
                     .delta = 1e-3,
                     .target = 2,
                     .budget = 1,
                     .residual_max_degree = 0,
                     .seed = 9};
  ExperimentRecord b = a;
  b.graph = "data/with,comma \"quoted\".txt";
  b.residual_spectral_radius = 1.25;
  const std::vector<ExperimentRecord> records = {a, b};
  const auto rows = ParseCsv(FormatRecords(records));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].size(), 12u);
  EXPECT_EQ(rows[1][0], "star:n=6");
  EXPECT_EQ(rows[2][0], b.graph);
  EXPECT_EQ(rows[1][2], "0.5");
  EXPECT_EQ(rows[1][8], "-1");
  EXPECT_EQ(rows[2][8], "1.25");
  EXPECT_EQ(rows[1][10], "9");
}

TEST(RecordsTest, AppendKeepsOneHeader) {
  const std::string path = ::testing::TempDir() + "/privimmune_records.csv";
  std::remove(path.c_str());
  const std::vector<ExperimentRecord> one = {{.graph = "g", .algorithm = "a"}};
  ASSERT_TRUE(WriteRecords(one, path, /*append=*/true).ok());
  ASSERT_TRUE(WriteRecords(one, path, /*append=*/true).ok());
  const auto rows = ParseCsv(*ReadTextFile(path));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0][0], "graph");
  ASSERT_TRUE(WriteTextFile(path, "other,header\n").ok());
  EXPECT_FALSE(WriteRecords(one, path, /*append=*/true).ok());
  std::remove(path.c_str());
}

}  // namespace
}  // namespace privimmune
