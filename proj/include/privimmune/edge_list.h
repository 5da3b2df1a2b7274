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


#ifndef PRIVIMMUNE_EDGE_LIST_H_
#define PRIVIMMUNE_EDGE_LIST_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "privimmune/graph.h"

namespace privimmune {

// Edge-list text: one "u v" pair per line, whitespace separated; blank lines
// and lines starting with '#' are skipped. Ids are arbitrary non-negative
// integers, remapped densely in increasing order.
struct LoadedGraph {
  Graph graph;
  // original_ids[dense] is the id as written in the file.
  std::vector<int64_t> original_ids;
  int64_t self_loops_dropped = 0;
  int64_t duplicates_dropped = 0;
};

absl::StatusOr<LoadedGraph> ParseEdgeList(absl::string_view text);
absl::StatusOr<LoadedGraph> LoadEdgeList(const std::string& path);

// One "u v" line per edge with u < v. When `original_ids` is non-empty the
// ids are translated through it. Isolated nodes are not represented.
std::string FormatEdgeList(const Graph& g,
                           std::span<const int64_t> original_ids = {});
absl::Status SaveEdgeList(const Graph& g, const std::string& path,
                          std::span<const int64_t> original_ids = {});

// "dense original" per line.
std::string FormatIdMap(std::span<const int64_t> original_ids);

// Solution files: one node id per line, '#' comments allowed.
absl::StatusOr<std::vector<int64_t>> ParseNodeList(absl::string_view text);
absl::StatusOr<std::vector<int64_t>> ReadNodeList(const std::string& path);
std::string FormatNodeList(std::span<const int64_t> ids);

absl::StatusOr<std::string> ReadTextFile(const std::string& path);
absl::Status WriteTextFile(const std::string& path, absl::string_view text);

}  // namespace privimmune

#endif  // PRIVIMMUNE_EDGE_LIST_H_
