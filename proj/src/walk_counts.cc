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


#include "privimmune/walk_counts.h"

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace privimmune {

WalkVectors ComputeWalkVectors(const Graph& g, const NodeMask& mask) {
  const int32_t n = g.num_nodes();
  WalkVectors w;
  for (auto& level : w) level.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) w[0][v] = mask.removed(v) ? 0 : 1;
  for (int len = 1; len <= 4; ++len) {
    for (NodeId v = 0; v < n; ++v) {
      if (mask.removed(v)) continue;
      int64_t s = 0;
      for (NodeId u : g.neighbors(v)) s += w[len - 1][u];
      w[len][v] = s;
    }
  }
  return w;
}

int64_t CountWalks4(const Graph& g, const NodeMask& mask) {
  const WalkVectors w = ComputeWalkVectors(g, mask);
  int64_t total = 0;
  for (int64_t x : w[2]) total += x * x;
  return total;
}

absl::StatusOr<int64_t> Walks4Through(const Graph& g, const NodeMask& mask,
                                      NodeId v) {
  if (!g.contains(v)) {
    return absl::OutOfRangeError(absl::StrFormat("node id %d out of range", v));
  }
  if (mask.removed(v)) {
    return absl::FailedPreconditionError(
        absl::StrFormat("node %d is removed", v));
  }
  const WalkVectors w = ComputeWalkVectors(g, mask);
  return 2 * w[4][v] + 2 * w[1][v] * w[3][v] + w[2][v] * w[2][v];
}

std::vector<int64_t> Walks4ThroughAll(const Graph& g, const NodeMask& mask) {
  const WalkVectors w = ComputeWalkVectors(g, mask);
  std::vector<int64_t> out(g.num_nodes(), 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (mask.removed(v)) continue;
    out[v] = 2 * w[4][v] + 2 * w[1][v] * w[3][v] + w[2][v] * w[2][v];
  }
  return out;
}

WalkTracker::WalkTracker(const Graph& g)
    : graph_(&g),
      mask_(g.num_nodes()),
      walks_(ComputeWalkVectors(g, mask_)),
      utility_(g.num_nodes(), 0),
      depth_(g.num_nodes(), -1) {
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    utility_[v] = UtilityFromVectors(v);
    total_walks4_ += walks_[2][v] * walks_[2][v];
  }
}

int64_t WalkTracker::UtilityFromVectors(NodeId v) const {
  if (mask_.removed(v)) return 0;
  return 2 * walks_[4][v] + 2 * walks_[1][v] * walks_[3][v] +
         walks_[2][v] * walks_[2][v];
}

std::span<const NodeId> WalkTracker::Remove(NodeId x) {
  const Graph& g = *graph_;
  touched_.clear();
  if (mask_.removed(x)) return touched_;

  // Ball of radius 4 around x in the graph before the removal, in BFS order,
  // so nodes at depth <= i form a prefix of `ball_`.
  ball_.clear();
  ball_.push_back(x);
  depth_[x] = 0;
  std::array<size_t, 5> end_of_depth{};
  size_t head = 0;
  for (int d = 0; d < 4; ++d) {
    const size_t level_end = ball_.size();
    for (; head < level_end; ++head) {
      for (NodeId u : g.neighbors(ball_[head])) {
        if (mask_.removed(u) || depth_[u] >= 0) continue;
        depth_[u] = d + 1;
        ball_.push_back(u);
      }
    }
    end_of_depth[d] = level_end;
  }
  end_of_depth[4] = ball_.size();

  mask_.Remove(x);
  total_walks4_ -= walks_[2][x] * walks_[2][x];
  for (int len = 0; len <= 4; ++len) walks_[len][x] = 0;
  // Recompute w_len on the radius-len ball, shortest lengths first; each
  // level only reads the level below, which is already final.
  for (int len = 1; len <= 4; ++len) {
    for (size_t i = 1; i < end_of_depth[len]; ++i) {
      const NodeId v = ball_[i];
      int64_t s = 0;
      for (NodeId u : g.neighbors(v)) s += walks_[len - 1][u];
      if (len == 2) total_walks4_ += s * s - walks_[2][v] * walks_[2][v];
      walks_[len][v] = s;
    }
  }
  utility_[x] = 0;
  for (size_t i = 1; i < ball_.size(); ++i) {
    const NodeId v = ball_[i];
    utility_[v] = UtilityFromVectors(v);
    touched_.push_back(v);
  }
  for (NodeId v : ball_) depth_[v] = -1;
  return touched_;
}

}  // namespace privimmune
