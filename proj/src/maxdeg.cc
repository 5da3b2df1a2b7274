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

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace privimmune {
namespace {

absl::Status ValidateTask(const MaxDegTask& task) {
  if (task.target_degree < 0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "target degree must be non-negative, got %d", task.target_degree));
  }
  return PrivacyBudget::Create(task.budget.epsilon, task.budget.delta,
                               task.budget.epsilon1)
      .status();
}

PrivacyReport ImplicitReport(const MaxDegTask& task,
                             const MaxDegParameters& p) {
  PrivacyReport report;
  report.mechanism = "privmaxdeg-implicit";
  report.model = task.model;
  if (task.model == NeighborModel::kEdge) {
    report.stages.push_back(
        {"implicit permutation (exponential mechanism over the cover "
         "reduction, 4-step group privacy)",
         absl::StrFormat("(eps, delta) = (%g, %g) via cover budget eps/4 = %g, "
                         "delta/(4 e^{3 eps/4}) = %g",
                         task.budget.epsilon, task.budget.delta,
                         p.cover_epsilon, p.cover_delta),
         task.budget.epsilon, task.budget.delta});
  } else {
    report.stages.push_back(
        {"implicit permutation (exponential mechanism, multiset neighbors)",
         absl::StrFormat("(eps, delta) = (%g, %g) on the cover instance",
                         task.budget.epsilon, task.budget.delta),
         task.budget.epsilon, task.budget.delta});
    report.caveats.push_back(
        "multiset neighbor model: neighboring cover instances differ in one "
        "requirement or multiplicity; no edge-DP guarantee is claimed");
  }
  report.AddParameter("epsilon", task.budget.epsilon);
  report.AddParameter("delta", task.budget.delta);
  report.AddParameter("cover_epsilon", p.cover_epsilon);
  report.AddParameter("cover_delta", p.cover_delta);
  report.AddParameter("eps_prime", p.eps_prime);
  report.AddParameter("target_degree", task.target_degree);
  return report;
}

std::vector<NodeId> ToNodes(const std::vector<int32_t>& sets) {
  return std::vector<NodeId>(sets.begin(), sets.end());
}

}  // namespace

MaxDegParameters DeriveMaxDegParameters(const PrivacyBudget& budget,
                                        NeighborModel model) {
  MaxDegParameters p;
  if (model == NeighborModel::kEdge) {
    p.cover_epsilon = budget.epsilon / 4.0;
    p.cover_delta = budget.delta / (4.0 * std::exp(3.0 * p.cover_epsilon));
  } else {
    p.cover_epsilon = budget.epsilon;
    p.cover_delta = budget.delta;
  }
  p.eps_prime = MulticoverEpsPrime(p.cover_epsilon, p.cover_delta);
  return p;
}

MultiCoverInstance BuildMaxDegInstance(const Graph& g, int32_t target_degree) {
  const int32_t n = g.num_nodes();
  std::vector<int64_t> requirements(n);
  std::vector<std::vector<SetEntry>> sets(n);
  for (NodeId v = 0; v < n; ++v) {
    requirements[v] =
        std::max<int64_t>(0, g.degree_unchecked(v) - int64_t{target_degree});
    auto& entries = sets[v];
    entries.reserve(g.degree_unchecked(v) + 1);
    entries.push_back({v, kUnbounded});
    for (NodeId u : g.neighbors(v)) entries.push_back({u, 1});
  }
  // The construction always satisfies Create's preconditions.
  return *MultiCoverInstance::Create(n, std::move(requirements),
                                     std::move(sets));
}

absl::StatusOr<ImplicitMaxDegResult> PrivMaxDegImplicit(const MaxDegTask& task,
                                                        Rng& rng) {
  if (absl::Status s = ValidateTask(task); !s.ok()) return s;
  const MultiCoverInstance inst =
      BuildMaxDegInstance(task.graph, task.target_degree);
  ImplicitMaxDegResult result;
  result.parameters = DeriveMaxDegParameters(task.budget, task.model);
  absl::StatusOr<ImplicitSolution> sol =
      PrivatePermutationWithEpsPrime(inst, result.parameters.eps_prime, rng);
  if (!sol.ok()) return sol.status();
  absl::StatusOr<std::vector<int32_t>> cover =
      DecodeCover(inst, sol->permutation);
  if (!cover.ok()) return cover.status();
  result.solution = *std::move(sol);
  result.removed = ToNodes(*cover);
  absl::StatusOr<NodeMask> mask = RemoveNodes(task.graph, result.removed);
  if (!mask.ok()) return mask.status();
  result.residual_max_degree = MaxDegree(task.graph, *mask);
  result.report = ImplicitReport(task, result.parameters);
  return result;
}

absl::StatusOr<ExplicitSolution> ExplicitFromPermutation(
    const MaxDegTask& task, const ImplicitSolution& permutation, Rng& rng) {
  if (absl::Status s = ValidateTask(task); !s.ok()) return s;
  if (!(task.budget.epsilon1 > 0.0)) {
    return absl::FailedPreconditionError(
        "explicit solution needs epsilon1 > 0 for its stopping rule");
  }
  if (!(task.threshold_constant > 0.0)) {
    return absl::InvalidArgumentError("threshold constant must be positive");
  }
  const int32_t n = task.graph.num_nodes();
  if (static_cast<int32_t>(permutation.permutation.size()) != n ||
      static_cast<int32_t>(permutation.max_residual_utility.size()) != n + 1) {
    return absl::InvalidArgumentError(
        "permutation does not match the graph size");
  }
  ExplicitSolution out;
  out.parameters = DeriveMaxDegParameters(task.budget, task.model);
  out.threshold = n > 0 ? task.threshold_constant *
                              std::log(static_cast<double>(n)) /
                              out.parameters.eps_prime
                        : 0.0;
  const auto& stream = permutation.max_residual_utility;
  absl::StatusOr<SparseVectorResult> stop = SparseVectorBelow(
      [&](int64_t i) -> std::optional<double> {
        if (i >= static_cast<int64_t>(stream.size())) return std::nullopt;
        return stream[i];
      },
      out.threshold, task.budget.epsilon1, rng);
  if (!stop.ok()) return stop.status();
  out.noisy_threshold = stop->noisy_threshold;
  out.k = stop->index.value_or(n);
  out.nodes.assign(permutation.permutation.begin(),
                   permutation.permutation.begin() + out.k);
  absl::StatusOr<NodeMask> mask = RemoveNodes(task.graph, out.nodes);
  if (!mask.ok()) return mask.status();
  out.residual_max_degree = MaxDegree(task.graph, *mask);
  out.permutation = permutation;

  out.report = ImplicitReport(task, out.parameters);
  out.report.mechanism = "privmaxdeg-explicit";
  const double stop_scale = task.model == NeighborModel::kEdge ? 4.0 : 1.0;
  out.report.stages.push_back(
      {"sparse-vector stopping rule on L_i",
       task.model == NeighborModel::kEdge
           ? absl::StrFormat("4 * epsilon1 = %g", 4.0 * task.budget.epsilon1)
           : absl::StrFormat("epsilon1 = %g", task.budget.epsilon1),
       stop_scale * task.budget.epsilon1, 0.0});
  out.report.AddParameter("epsilon1", task.budget.epsilon1);
  out.report.AddParameter("threshold_constant", task.threshold_constant);
  out.report.AddParameter("threshold", out.threshold);
  out.report.AddParameter("threshold_noise_scale", 2.0 / task.budget.epsilon1);
  out.report.AddParameter("query_noise_scale", 4.0 / task.budget.epsilon1);
  out.report.caveats.push_back(
      "the permutation and the stopping rule are accounted separately; no "
      "combined figure is claimed");
  out.report.caveats.push_back(
      "explicit output may leave residual degree above the target by an "
      "additive slack");
  return out;
}

absl::StatusOr<ExplicitSolution> PrivMaxDegExplicit(const MaxDegTask& task,
                                                    Rng& rng) {
  if (absl::Status s = ValidateTask(task); !s.ok()) return s;
  if (!(task.budget.epsilon1 > 0.0)) {
    return absl::FailedPreconditionError(
        "explicit solution needs epsilon1 > 0 for its stopping rule");
  }
  const MultiCoverInstance inst =
      BuildMaxDegInstance(task.graph, task.target_degree);
  const MaxDegParameters params =
      DeriveMaxDegParameters(task.budget, task.model);
  absl::StatusOr<ImplicitSolution> sol =
      PrivatePermutationWithEpsPrime(inst, params.eps_prime, rng);
  if (!sol.ok()) return sol.status();
  return ExplicitFromPermutation(task, *sol, rng);
}

absl::StatusOr<std::vector<NodeId>> GreedyMaxDeg(const Graph& g,
                                                 int32_t target_degree) {
  if (target_degree < 0) {
    return absl::InvalidArgumentError("target degree must be non-negative");
  }
  absl::StatusOr<std::vector<int32_t>> cover =
      GreedyCover(BuildMaxDegInstance(g, target_degree));
  if (!cover.ok()) return cover.status();
  return ToNodes(*cover);
}

}  // namespace privimmune
