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


#ifndef PRIVIMMUNE_SPECTRAL_H_
#define PRIVIMMUNE_SPECTRAL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "privimmune/dp.h"
#include "privimmune/graph.h"
#include "privimmune/multicover.h"
#include "privimmune/privacy_report.h"

namespace privimmune {

// ---------------------------------------------------------------------------
// Hitting length-4 walks.

struct SpectralWalkTask {
  const Graph& graph;
  // epsilon/delta drive the permutation, epsilon1 the stopping rule.
  PrivacyBudget budget;
  // T; defaults to sqrt(max degree).
  std::optional<double> walk_scale = std::nullopt;
  // theta; defaults to 4 n T^4.
  std::optional<double> theta = std::nullopt;
};

struct WalkHittingOptions {
  // Compare the tracked utilities and W4 against a from-scratch recount after
  // every removal. Debug aid; O(n m) overall.
  bool verify_incremental = false;
};

struct WalkHittingResult {
  // Full node order drawn by the exponential mechanism.
  std::vector<NodeId> permutation;
  // W4 of the residual graph after the first i removals, i = 0..n.
  std::vector<int64_t> walks4_stream;
  int64_t k = 0;
  std::vector<NodeId> removed;
  int64_t residual_walks4 = 0;
  double eps_prime = 0.0;
  double walk_scale = 0.0;
  double theta = 0.0;
  double noisy_theta = 0.0;
  PrivacyReport report;
};

// Samples nodes one at a time with probability proportional to
// exp(eps' * A(v)), A the walk-hitting utility on the shrinking graph and
// eps' = eps / (2 ln(e / delta)); then runs the below-threshold sparse-vector
// rule over W4(G - {pi_1..pi_i}), i = 0..n, against theta. Needs epsilon1 > 0.
absl::StatusOr<WalkHittingResult> PrivMinSRWalks(
    const SpectralWalkTask& task, Rng& rng,
    const WalkHittingOptions& options = {});

// Non-private baseline: repeatedly removes the node of largest walk-hitting
// utility (lowest id on ties) until W4 <= theta.
std::vector<NodeId> GreedyWalkHitting(const Graph& g, double theta);

// ---------------------------------------------------------------------------
// Neighbor-degree-sum reduction to multi-cover.

// How many copies of a neighbor the set S_v holds.
enum class SpectralMultiplicity {
  // m(S_v, u) = d(v): removing v lowers u's neighbor-degree sum by d(v), so a
  // decoded cover certifies max neighbor-degree sum <= D.
  kOwnerDegree,
  // m(S_v, u) = d(u), the neighbor's own degree. Kept for comparison; it can
  // over-credit a high-degree node and does not certify the bound.
  kNeighborDegree,
};

// One set per node holding unbounded copies of v plus copies of each neighbor
// per `multiplicity`; r_v = max(sum_{u ~ v} d(u) - D, 0).
MultiCoverInstance BuildSpectralInstance(
    const Graph& g, int64_t target,
    SpectralMultiplicity multiplicity = SpectralMultiplicity::kOwnerDegree);

struct SpectralCoverTask {
  const Graph& graph;
  // D; the certified spectral bound is sqrt(D).
  int64_t target = 0;
  PrivacyBudget budget;
  NeighborModel model = NeighborModel::kEdge;
  SpectralMultiplicity multiplicity = SpectralMultiplicity::kOwnerDegree;
};

struct SpectralCoverResult {
  ImplicitSolution solution;
  std::vector<NodeId> removed;
  double cover_epsilon = 0.0;
  double cover_delta = 0.0;
  double eps_prime = 0.0;
  int64_t residual_max_neighbor_degree_sum = 0;
  double residual_spectral_radius = 0.0;
  double certified_bound = 0.0;
  PrivacyReport report;
};

// Under the edge model one edge moves up to 4 * Delta cover coordinates, so
// the budget becomes (eps / (4 Delta), delta / (4 Delta e^{(4 Delta - 1)
// eps'})) with Delta the max degree of the input graph.
absl::StatusOr<SpectralCoverResult> PrivMinSRMultiset(
    const SpectralCoverTask& task, Rng& rng);

}  // namespace privimmune

#endif  // PRIVIMMUNE_SPECTRAL_H_
