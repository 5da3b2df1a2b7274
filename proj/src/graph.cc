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


#include "privimmune/graph.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace privimmune {
namespace {

absl::Status CheckNode(const Graph& g, NodeId v) {
  if (!g.contains(v)) {
    return absl::OutOfRangeError(
        absl::StrFormat("node id %d outside [0, %d)", v, g.num_nodes()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Graph> Graph::FromEdges(int32_t num_nodes,
                                       std::span<const Edge> edges,
                                       BuildStats* stats) {
  if (num_nodes < 0) {
    return absl::InvalidArgumentError("negative node count");
  }
  BuildStats local;
  std::vector<Edge> canonical;
  canonical.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= num_nodes || v < 0 || v >= num_nodes) {
      return absl::OutOfRangeError(absl::StrFormat(
          "edge (%d, %d) has an endpoint outside [0, %d)", u, v, num_nodes));
    }
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    canonical.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canonical.begin(), canonical.end());
  const auto last = std::unique(canonical.begin(), canonical.end());
  local.duplicates_dropped = std::distance(last, canonical.end());
  canonical.erase(last, canonical.end());

  Graph g;
  g.num_nodes_ = num_nodes;
  g.offsets_.assign(num_nodes + 1, 0);
  for (const auto& [u, v] : canonical) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (int32_t i = 0; i < num_nodes; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.resize(2 * canonical.size());
  std::vector<int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : canonical) {
    g.targets_[cursor[u]++] = v;
    g.targets_[cursor[v]++] = u;
  }
  for (int32_t v = 0; v < num_nodes; ++v) {
    std::sort(g.targets_.begin() + g.offsets_[v],
              g.targets_.begin() + g.offsets_[v + 1]);
  }
  if (stats != nullptr) *stats = local;
  return g;
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes_; ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

absl::StatusOr<NodeMask> RemoveNodes(const Graph& g,
                                     std::span<const NodeId> nodes) {
  NodeMask mask(g.num_nodes());
  for (NodeId v : nodes) {
    if (absl::Status s = CheckNode(g, v); !s.ok()) return s;
    mask.Remove(v);
  }
  return mask;
}

absl::StatusOr<int32_t> Degree(const Graph& g, NodeId v) {
  if (absl::Status s = CheckNode(g, v); !s.ok()) return s;
  return g.degree_unchecked(v);
}

int32_t ResidualDegree(const Graph& g, const NodeMask& mask, NodeId v) {
  int32_t d = 0;
  for (NodeId u : g.neighbors(v)) d += mask.removed(u) ? 0 : 1;
  return d;
}

int32_t MaxDegree(const Graph& g, const NodeMask& mask) {
  int32_t best = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (!mask.removed(v)) best = std::max(best, ResidualDegree(g, mask, v));
  }
  return best;
}

int32_t MaxDegree(const Graph& g) {
  int32_t best = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    best = std::max(best, g.degree_unchecked(v));
  }
  return best;
}

absl::StatusOr<int64_t> NeighborDegreeSum(const Graph& g, NodeId v,
                                          const NodeMask& mask) {
  if (absl::Status s = CheckNode(g, v); !s.ok()) return s;
  if (mask.removed(v)) {
    return absl::FailedPreconditionError(
        absl::StrFormat("node %d is removed", v));
  }
  int64_t sum = 0;
  for (NodeId u : g.neighbors(v)) {
    if (!mask.removed(u)) sum += ResidualDegree(g, mask, u);
  }
  return sum;
}

int64_t MaxNeighborDegreeSum(const Graph& g, const NodeMask& mask) {
  std::vector<int32_t> degree(g.num_nodes(), 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (!mask.removed(v)) degree[v] = ResidualDegree(g, mask, v);
  }
  int64_t best = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (mask.removed(v)) continue;
    int64_t sum = 0;
    for (NodeId u : g.neighbors(v)) {
      if (!mask.removed(u)) sum += degree[u];
    }
    best = std::max(best, sum);
  }
  return best;
}

absl::StatusOr<double> SpectralRadius(const Graph& g, const NodeMask& mask,
                                      const SpectralOptions& options) {
  if (!(options.tolerance > 0.0)) {
    return absl::InvalidArgumentError("spectral tolerance must be positive");
  }
  const int32_t n = g.num_nodes();
  bool has_edge = false;
  for (NodeId v = 0; v < n && !has_edge; ++v) {
    if (!mask.removed(v) && ResidualDegree(g, mask, v) > 0) has_edge = true;
  }
  if (!has_edge) return 0.0;

  const int64_t cap = options.max_iterations > 0
                          ? options.max_iterations
                          : 10 * static_cast<int64_t>(n) + 1000;
  std::vector<double> x(n, 0.0);
  std::vector<double> ax(n, 0.0);
  for (NodeId v = 0; v < n; ++v) x[v] = mask.removed(v) ? 0.0 : 1.0;

  double previous = -1.0;
  for (int64_t iter = 0; iter < cap; ++iter) {
    double norm2 = 0.0;
    double quad = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (mask.removed(v)) continue;
      double s = 0.0;
      for (NodeId u : g.neighbors(v)) {
        if (!mask.removed(u)) s += x[u];
      }
      ax[v] = s;
      norm2 += x[v] * x[v];
      quad += x[v] * s;
    }
    const double rayleigh = quad / norm2;
    if (std::abs(rayleigh - previous) < options.tolerance) return rayleigh;
    previous = rayleigh;
    // x <- (A + I) x, normalized.
    double next_norm2 = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (mask.removed(v)) continue;
      x[v] += ax[v];
      next_norm2 += x[v] * x[v];
    }
    const double scale = 1.0 / std::sqrt(next_norm2);
    for (NodeId v = 0; v < n; ++v) x[v] *= scale;
  }
  return absl::DeadlineExceededError(absl::StrFormat(
      "power iteration did not converge to %g within %d iterations",
      options.tolerance, cap));
}

}  // namespace privimmune
