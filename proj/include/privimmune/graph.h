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


#ifndef PRIVIMMUNE_GRAPH_H_
#define PRIVIMMUNE_GRAPH_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace privimmune {

using NodeId = int32_t;
using Edge = std::pair<NodeId, NodeId>;

// Undirected simple graph on nodes 0..n-1 in compressed adjacency form.
// Immutable once built; removals are expressed with a NodeMask overlay.
class Graph {
 public:
  struct BuildStats {
    int64_t self_loops_dropped = 0;
    int64_t duplicates_dropped = 0;
  };

  Graph() = default;

  // Builds from an edge list. Self-loops and repeated edges (in either
  // orientation) are dropped and counted in `stats` when given. Fails on ids
  // outside [0, num_nodes).
  static absl::StatusOr<Graph> FromEdges(int32_t num_nodes,
                                         std::span<const Edge> edges,
                                         BuildStats* stats = nullptr);

  int32_t num_nodes() const { return num_nodes_; }
  int64_t num_edges() const {
    return static_cast<int64_t>(targets_.size()) / 2;
  }

  // Sorted neighbors of v. v must be a valid id.
  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v],
            static_cast<size_t>(offsets_[v + 1] - offsets_[v])};
  }
  int32_t degree_unchecked(NodeId v) const {
    return static_cast<int32_t>(offsets_[v + 1] - offsets_[v]);
  }
  bool contains(NodeId v) const { return v >= 0 && v < num_nodes_; }

  // Every edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> Edges() const;

 private:
  int32_t num_nodes_ = 0;
  std::vector<int64_t> offsets_{0};
  std::vector<NodeId> targets_;
};

// Per-node removal flags describing the induced subgraph G[V \ S].
class NodeMask {
 public:
  NodeMask() = default;
  explicit NodeMask(int32_t num_nodes) : removed_(num_nodes, false) {}

  int32_t size() const { return static_cast<int32_t>(removed_.size()); }
  bool removed(NodeId v) const { return removed_[v]; }
  int32_t num_removed() const { return num_removed_; }
  void Remove(NodeId v) {
    if (!removed_[v]) {
      removed_[v] = true;
      ++num_removed_;
    }
  }

 private:
  std::vector<bool> removed_;
  int32_t num_removed_ = 0;
};

// Mask with exactly `nodes` removed; duplicates are harmless.
absl::StatusOr<NodeMask> RemoveNodes(const Graph& g,
                                     std::span<const NodeId> nodes);

absl::StatusOr<int32_t> Degree(const Graph& g, NodeId v);

// Degree of v counting only neighbors that survive the mask.
int32_t ResidualDegree(const Graph& g, const NodeMask& mask, NodeId v);

// Maximum degree of the induced subgraph on surviving nodes; 0 if none.
int32_t MaxDegree(const Graph& g, const NodeMask& mask);
int32_t MaxDegree(const Graph& g);

// Sum of residual degrees over surviving neighbors of a surviving node v.
absl::StatusOr<int64_t> NeighborDegreeSum(const Graph& g, NodeId v,
                                          const NodeMask& mask);

// Max over surviving nodes of NeighborDegreeSum; 0 for an empty residual.
int64_t MaxNeighborDegreeSum(const Graph& g, const NodeMask& mask);

struct SpectralOptions {
  double tolerance = 1e-9;
  // 0 selects the default cap 10 * n + 1000.
  int64_t max_iterations = 0;
};

// Largest adjacency eigenvalue of the induced subgraph by power iteration on
// A + I from the all-ones vector. The shift keeps bipartite components from
// oscillating. Stops when successive Rayleigh quotients differ by less than
// the tolerance; returns an error if the iteration cap is hit first.
absl::StatusOr<double> SpectralRadius(const Graph& g, const NodeMask& mask,
                                      const SpectralOptions& options = {});

}  // namespace privimmune

#endif  // PRIVIMMUNE_GRAPH_H_
