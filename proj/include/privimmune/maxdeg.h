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


#ifndef PRIVIMMUNE_MAXDEG_H_
#define PRIVIMMUNE_MAXDEG_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "privimmune/dp.h"
#include "privimmune/graph.h"
#include "privimmune/multicover.h"
#include "privimmune/privacy_report.h"

namespace privimmune {

// Reduce the maximum degree of a private graph to a target D by removing
// nodes. D >= max degree is allowed and yields an instance with no work.
struct MaxDegTask {
  const Graph& graph;
  int32_t target_degree = 0;
  PrivacyBudget budget;
  NeighborModel model = NeighborModel::kEdge;
  // c in the stopping threshold c * ln(n) / eps' of the explicit solution.
  double threshold_constant = 6.0;
};

// Parameters handed to the multi-cover mechanism. Under the edge model one
// edge moves at most four cover coordinates, so the budget is first rescaled
// to (eps/4, delta / (4 e^{3 eps/4})); under the multiset model it is used
// as is. eps_prime is the resulting exponent scale of the sampling step.
struct MaxDegParameters {
  double cover_epsilon = 0.0;
  double cover_delta = 0.0;
  double eps_prime = 0.0;
};

MaxDegParameters DeriveMaxDegParameters(const PrivacyBudget& budget,
                                        NeighborModel model);

// One set S_v per node: m(S_v, v) = unbounded and m(S_v, u) = 1 for every
// neighbor u; requirement r_v = max(deg(v) - D, 0).
MultiCoverInstance BuildMaxDegInstance(const Graph& g, int32_t target_degree);

struct ImplicitMaxDegResult {
  ImplicitSolution solution;
  // Decoded removal set, in permutation order.
  std::vector<NodeId> removed;
  int32_t residual_max_degree = 0;
  MaxDegParameters parameters;
  PrivacyReport report;
};

// Implicit solution: the decoded set always brings the max degree to <= D.
absl::StatusOr<ImplicitMaxDegResult> PrivMaxDegImplicit(const MaxDegTask& task,
                                                        Rng& rng);

struct ExplicitSolution {
  // pi_1..pi_k.
  std::vector<NodeId> nodes;
  int64_t k = 0;
  // Recomputed on the residual graph.
  int32_t residual_max_degree = 0;
  double threshold = 0.0;
  double noisy_threshold = 0.0;
  ImplicitSolution permutation;
  MaxDegParameters parameters;
  PrivacyReport report;
};

// Explicit solution: draws the implicit permutation, then feeds
// L_0, L_1, ..., L_n (largest residual utility among sets not yet taken after
// i removals) to the below-threshold sparse-vector rule against
// threshold_constant * ln(n) / eps'. Returns the prefix before the crossing.
// Needs budget.epsilon1 > 0.
absl::StatusOr<ExplicitSolution> PrivMaxDegExplicit(const MaxDegTask& task,
                                                    Rng& rng);

// Stopping stage alone, applied to an existing permutation realization.
absl::StatusOr<ExplicitSolution> ExplicitFromPermutation(
    const MaxDegTask& task, const ImplicitSolution& permutation, Rng& rng);

// Non-private greedy baseline on the same reduction.
absl::StatusOr<std::vector<NodeId>> GreedyMaxDeg(const Graph& g,
                                                 int32_t target_degree);

}  // namespace privimmune

#endif  // PRIVIMMUNE_MAXDEG_H_
