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


#ifndef PRIVIMMUNE_WALK_COUNTS_H_
#define PRIVIMMUNE_WALK_COUNTS_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "privimmune/graph.h"

namespace privimmune {

// Length-4 walk statistics of an induced subgraph.
//
// A walk is an ordered sequence v0..v4 with consecutive vertices adjacent;
// vertices may repeat. With w_i(v) the number of length-i walks starting at v
// (w_0 = 1 on surviving nodes), the total is W4 = sum_v w_2(v)^2 and the
// hitting utility of v counts each walk once per position v occupies:
//   A(v) = sum_{i=0..4} w_i(v) * w_{4-i}(v) = 2 w_4 + 2 w_1 w_3 + w_2^2.
// Summed over all vertices this is exactly 5 * W4.

using WalkVectors = std::array<std::vector<int64_t>, 5>;

WalkVectors ComputeWalkVectors(const Graph& g, const NodeMask& mask);

int64_t CountWalks4(const Graph& g, const NodeMask& mask);

absl::StatusOr<int64_t> Walks4Through(const Graph& g, const NodeMask& mask,
                                      NodeId v);

// Walks4Through for every node at once (0 for removed nodes).
std::vector<int64_t> Walks4ThroughAll(const Graph& g, const NodeMask& mask);

// Maintains walk vectors, hitting utilities and W4 while nodes are removed
// one at a time. Removing x only changes w_i on the radius-i ball around x,
// so each removal touches the 4-neighborhood of x rather than the graph.
class WalkTracker {
 public:
  explicit WalkTracker(const Graph& g);

  const Graph& graph() const { return *graph_; }
  const NodeMask& mask() const { return mask_; }
  int64_t total_walks4() const { return total_walks4_; }
  int64_t utility(NodeId v) const { return utility_[v]; }
  std::span<const int64_t> utilities() const { return utility_; }

  // Removes a surviving node and returns the surviving nodes whose utility
  // may have changed. The span is valid until the next call.
  std::span<const NodeId> Remove(NodeId v);

 private:
  int64_t UtilityFromVectors(NodeId v) const;

  const Graph* graph_;
  NodeMask mask_;
  WalkVectors walks_;
  std::vector<int64_t> utility_;
  int64_t total_walks4_ = 0;

  // Scratch for the bounded BFS.
  std::vector<int32_t> depth_;
  std::vector<NodeId> ball_;
  std::vector<NodeId> touched_;
};

}  // namespace privimmune

#endif  // PRIVIMMUNE_WALK_COUNTS_H_
