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


#include "privimmune/spectral.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "privimmune/walk_counts.h"

namespace privimmune {
namespace {

// Exact W4 recount cadence while streaming removals.
constexpr int64_t kRecountInterval = 32;

}  // namespace

absl::StatusOr<WalkHittingResult> PrivMinSRWalks(
    const SpectralWalkTask& task, Rng& rng, const WalkHittingOptions& options) {
  const PrivacyBudget& budget = task.budget;
  if (absl::Status s =
          PrivacyBudget::Create(budget.epsilon, budget.delta, budget.epsilon1)
              .status();
      !s.ok()) {
    return s;
  }
  if (!(budget.epsilon1 > 0.0)) {
    return absl::FailedPreconditionError(
        "walk hitting needs epsilon1 > 0 for its stopping rule");
  }
  const Graph& g = task.graph;
  const int32_t n = g.num_nodes();
  const int32_t max_degree = MaxDegree(g);

  WalkHittingResult out;
  out.eps_prime = MulticoverEpsPrime(budget.epsilon, budget.delta);
  out.walk_scale =
      task.walk_scale.value_or(std::sqrt(static_cast<double>(max_degree)));
  if (!(out.walk_scale > 0.0) && !task.theta.has_value()) {
    // Edgeless input: theta = 0 is still a valid threshold.
    out.walk_scale = 0.0;
  }
  out.theta = task.theta.value_or(4.0 * n * std::pow(out.walk_scale, 4));

  WalkTracker tracker(g);
  std::vector<double> initial(n);
  for (NodeId v = 0; v < n; ++v) {
    initial[v] = static_cast<double>(tracker.utility(v));
  }
  ExponentialSampler sampler(initial, out.eps_prime);
  out.permutation.reserve(n);
  out.walks4_stream.reserve(n + 1);
  out.walks4_stream.push_back(tracker.total_walks4());

  for (int64_t step = 0; sampler.num_active() > 0; ++step) {
    if (tracker.total_walks4() == 0) {
      // Every remaining utility is zero: the rest is a uniform order.
      std::vector<NodeId> rest;
      for (NodeId v = 0; v < n; ++v) {
        if (sampler.active(v)) rest.push_back(v);
      }
      rng.Shuffle(std::span<NodeId>(rest));
      for (NodeId v : rest) {
        out.permutation.push_back(v);
        out.walks4_stream.push_back(0);
      }
      break;
    }
    const auto v = static_cast<NodeId>(sampler.Sample(rng));
    out.permutation.push_back(v);
    sampler.Deactivate(v);
    for (NodeId u : tracker.Remove(v)) {
      sampler.SetUtility(u, static_cast<double>(tracker.utility(u)));
    }
    out.walks4_stream.push_back(tracker.total_walks4());

    const bool recount =
        options.verify_incremental || (step + 1) % kRecountInterval == 0;
    if (recount && CountWalks4(g, tracker.mask()) != tracker.total_walks4()) {
      return absl::InternalError(absl::StrFormat(
          "tracked W4 %d disagrees with recount after %d removals",
          tracker.total_walks4(), step + 1));
    }
    if (options.verify_incremental) {
      const std::vector<int64_t> fresh = Walks4ThroughAll(g, tracker.mask());
      for (NodeId u = 0; u < n; ++u) {
        if (fresh[u] != tracker.utility(u)) {
          return absl::InternalError(
              absl::StrFormat("tracked utility of node %d is %d, recount %d", u,
                              tracker.utility(u), fresh[u]));
        }
      }
    }
  }

  absl::StatusOr<SparseVectorResult> stop = SparseVectorBelow(
      [&](int64_t i) -> std::optional<double> {
        if (i >= static_cast<int64_t>(out.walks4_stream.size())) {
          return std::nullopt;
        }
        return static_cast<double>(out.walks4_stream[i]);
      },
      out.theta, budget.epsilon1, rng);
  if (!stop.ok()) return stop.status();
  out.noisy_theta = stop->noisy_threshold;
  out.k = stop->index.value_or(n);
  out.removed.assign(out.permutation.begin(), out.permutation.begin() + out.k);
  out.residual_walks4 = out.walks4_stream[out.k];

  const double d2 = static_cast<double>(max_degree) * max_degree;
  PrivacyReport& report = out.report;
  report.mechanism = "privminsr-walks";
  report.model = NeighborModel::kEdge;
  report.stages.push_back(
      {"walk-hitting permutation and sparse-vector stop (combined as stated "
       "for this mechanism)",
       absl::StrFormat(
           "(Delta^2 (eps + eps1), Delta^2 delta e^{(Delta^2 - 1) eps}) = "
           "(%g, %g) with Delta = %d",
           d2 * (budget.epsilon + budget.epsilon1),
           d2 * budget.delta * std::exp((d2 - 1.0) * budget.epsilon),
           max_degree),
       d2 * (budget.epsilon + budget.epsilon1),
       d2 * budget.delta * std::exp((d2 - 1.0) * budget.epsilon)});
  report.AddParameter("epsilon", budget.epsilon);
  report.AddParameter("delta", budget.delta);
  report.AddParameter("epsilon1", budget.epsilon1);
  report.AddParameter("eps_prime", out.eps_prime);
  report.AddParameter("max_degree", max_degree);
  report.AddParameter("walk_scale", out.walk_scale);
  report.AddParameter("theta", out.theta);
  report.AddParameter("threshold_noise_scale", 2.0 / budget.epsilon1);
  report.AddParameter("query_noise_scale", 4.0 / budget.epsilon1);
  report.caveats.push_back(
      "W4 queries carry Lap(4/epsilon1) noise although their sensitivity is "
      "Delta^2; the stated cost is inflated by Delta^2 to account for it");
  report.caveats.push_back(
      "Delta is the max degree of the private graph and is not released "
      "privately");
  return out;
}

std::vector<NodeId> GreedyWalkHitting(const Graph& g, double theta) {
  WalkTracker tracker(g);
  std::vector<NodeId> removed;
  while (static_cast<double>(tracker.total_walks4()) > theta) {
    NodeId best = -1;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (tracker.mask().removed(v)) continue;
      if (best < 0 || tracker.utility(v) > tracker.utility(best)) best = v;
    }
    removed.push_back(best);
    tracker.Remove(best);
  }
  return removed;
}

MultiCoverInstance BuildSpectralInstance(const Graph& g, int64_t target,
                                         SpectralMultiplicity multiplicity) {
  const int32_t n = g.num_nodes();
  std::vector<int64_t> requirements(n);
  std::vector<std::vector<SetEntry>> sets(n);
  for (NodeId v = 0; v < n; ++v) {
    int64_t neighbor_degrees = 0;
    for (NodeId u : g.neighbors(v)) neighbor_degrees += g.degree_unchecked(u);
    requirements[v] = std::max<int64_t>(0, neighbor_degrees - target);
    auto& entries = sets[v];
    entries.push_back({v, kUnbounded});
    for (NodeId u : g.neighbors(v)) {
      const int64_t copies = multiplicity == SpectralMultiplicity::kOwnerDegree
                                 ? g.degree_unchecked(v)
                                 : g.degree_unchecked(u);
      entries.push_back({u, copies});
    }
  }
  return *MultiCoverInstance::Create(n, std::move(requirements),
                                     std::move(sets));
}

absl::StatusOr<SpectralCoverResult> PrivMinSRMultiset(
    const SpectralCoverTask& task, Rng& rng) {
  const PrivacyBudget& budget = task.budget;
  if (absl::Status s =
          PrivacyBudget::Create(budget.epsilon, budget.delta).status();
      !s.ok()) {
    return s;
  }
  if (task.target < 0) {
    return absl::InvalidArgumentError("target must be non-negative");
  }
  const Graph& g = task.graph;
  const int32_t max_degree = MaxDegree(g);
  // An edgeless graph needs no removal; keep the rescaling finite.
  const double group = 4.0 * std::max(max_degree, 1);

  SpectralCoverResult out;
  if (task.model == NeighborModel::kEdge) {
    out.cover_epsilon = budget.epsilon / group;
    out.cover_delta =
        budget.delta / (group * std::exp((group - 1.0) * out.cover_epsilon));
  } else {
    out.cover_epsilon = budget.epsilon;
    out.cover_delta = budget.delta;
  }
  out.eps_prime = MulticoverEpsPrime(out.cover_epsilon, out.cover_delta);

  const MultiCoverInstance inst =
      BuildSpectralInstance(g, task.target, task.multiplicity);
  absl::StatusOr<ImplicitSolution> sol =
      PrivatePermutationWithEpsPrime(inst, out.eps_prime, rng);
  if (!sol.ok()) return sol.status();
  absl::StatusOr<std::vector<int32_t>> cover =
      DecodeCover(inst, sol->permutation);
  if (!cover.ok()) return cover.status();
  out.solution = *std::move(sol);
  out.removed.assign(cover->begin(), cover->end());

  absl::StatusOr<NodeMask> mask = RemoveNodes(g, out.removed);
  if (!mask.ok()) return mask.status();
  out.residual_max_neighbor_degree_sum = MaxNeighborDegreeSum(g, *mask);
  absl::StatusOr<double> rho = SpectralRadius(g, *mask);
  if (!rho.ok()) return rho.status();
  out.residual_spectral_radius = *rho;
  out.certified_bound = std::sqrt(static_cast<double>(task.target));

  PrivacyReport& report = out.report;
  report.mechanism = "privminsr-multiset";
  report.model = task.model;
  if (task.model == NeighborModel::kEdge) {
    report.stages.push_back(
        {"implicit permutation over the neighbor-degree-sum reduction "
         "(4 Delta-step group privacy)",
         absl::StrFormat("(eps, delta) = (%g, %g) via cover budget "
                         "eps/(4 Delta) = %g, delta/(4 Delta e^{(4 Delta - 1) "
                         "eps'}) = %g with Delta = %d",
                         budget.epsilon, budget.delta, out.cover_epsilon,
                         out.cover_delta, max_degree),
         budget.epsilon, budget.delta});
  } else {
    report.stages.push_back(
        {"implicit permutation (multiset neighbors)",
         absl::StrFormat("(eps, delta) = (%g, %g) on the cover instance",
                         budget.epsilon, budget.delta),
         budget.epsilon, budget.delta});
    report.caveats.push_back(
        "multiset neighbor model: no edge-DP guarantee is claimed");
  }
  report.AddParameter("epsilon", budget.epsilon);
  report.AddParameter("delta", budget.delta);
  report.AddParameter("max_degree", max_degree);
  report.AddParameter("cover_epsilon", out.cover_epsilon);
  report.AddParameter("cover_delta", out.cover_delta);
  report.AddParameter("eps_prime", out.eps_prime);
  report.AddParameter("target", static_cast<double>(task.target));
  report.caveats.push_back(
      "the rescaling uses the private graph's max degree Delta, which is "
      "data-dependent and not released privately");
  if (task.multiplicity == SpectralMultiplicity::kNeighborDegree) {
    report.caveats.push_back(
        "neighbor-degree multiplicities: the sqrt(D) certificate is not "
        "guaranteed");
  }
  return out;
}

}  // namespace privimmune
