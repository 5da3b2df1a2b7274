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


#include "privimmune/edge_list.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"

namespace privimmune {
namespace {

bool IsSkippable(absl::string_view line) {
  return line.empty() || line.front() == '#';
}

absl::StatusOr<int64_t> ParseId(absl::string_view token, int64_t line_no) {
  int64_t id = 0;
  if (!absl::SimpleAtoi(token, &id) || id < 0) {
    return absl::InvalidArgumentError(
        absl::StrFormat("line %d: expected a non-negative integer id, got '%s'",
                        line_no, token));
  }
  return id;
}

}  // namespace

absl::StatusOr<LoadedGraph> ParseEdgeList(absl::string_view text) {
  std::vector<std::pair<int64_t, int64_t>> raw;
  int64_t line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    line = absl::StripAsciiWhitespace(line);
    if (IsSkippable(line)) continue;
    std::vector<absl::string_view> tokens =
        absl::StrSplit(line, absl::ByAnyChar(" \t,"), absl::SkipEmpty());
    if (tokens.size() != 2) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: expected 'u v', got '%s'", line_no, line));
    }
    absl::StatusOr<int64_t> u = ParseId(tokens[0], line_no);
    if (!u.ok()) return u.status();
    absl::StatusOr<int64_t> v = ParseId(tokens[1], line_no);
    if (!v.ok()) return v.status();
    raw.emplace_back(*u, *v);
  }

  LoadedGraph out;
  for (const auto& [u, v] : raw) {
    out.original_ids.push_back(u);
    out.original_ids.push_back(v);
  }
  std::sort(out.original_ids.begin(), out.original_ids.end());
  out.original_ids.erase(
      std::unique(out.original_ids.begin(), out.original_ids.end()),
      out.original_ids.end());
  if (out.original_ids.size() > static_cast<size_t>(INT32_MAX)) {
    return absl::ResourceExhaustedError("too many distinct node ids");
  }
  auto dense = [&](int64_t id) {
    return static_cast<NodeId>(
        std::lower_bound(out.original_ids.begin(), out.original_ids.end(), id) -
        out.original_ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) edges.push_back({dense(u), dense(v)});
  Graph::BuildStats stats;
  absl::StatusOr<Graph> g = Graph::FromEdges(
      static_cast<int32_t>(out.original_ids.size()), edges, &stats);
  if (!g.ok()) return g.status();
  out.graph = *std::move(g);
  out.self_loops_dropped = stats.self_loops_dropped;
  out.duplicates_dropped = stats.duplicates_dropped;
  return out;
}

absl::StatusOr<LoadedGraph> LoadEdgeList(const std::string& path) {
  absl::StatusOr<std::string> text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<LoadedGraph> loaded = ParseEdgeList(*text);
  if (!loaded.ok()) {
    return absl::Status(loaded.status().code(),
                        absl::StrCat(path, ": ", loaded.status().message()));
  }
  return loaded;
}

std::string FormatEdgeList(const Graph& g,
                           std::span<const int64_t> original_ids) {
  std::string out;
  for (const auto& [u, v] : g.Edges()) {
    if (original_ids.empty()) {
      absl::StrAppend(&out, u, " ", v, "\n");
    } else {
      absl::StrAppend(&out, original_ids[u], " ", original_ids[v], "\n");
    }
  }
  return out;
}

absl::Status SaveEdgeList(const Graph& g, const std::string& path,
                          std::span<const int64_t> original_ids) {
  return WriteTextFile(path, FormatEdgeList(g, original_ids));
}

std::string FormatIdMap(std::span<const int64_t> original_ids) {
  std::string out;
  for (size_t i = 0; i < original_ids.size(); ++i) {
    absl::StrAppend(&out, i, " ", original_ids[i], "\n");
  }
  return out;
}

absl::StatusOr<std::vector<int64_t>> ParseNodeList(absl::string_view text) {
  std::vector<int64_t> ids;
  int64_t line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    line = absl::StripAsciiWhitespace(line);
    if (IsSkippable(line)) continue;
    absl::StatusOr<int64_t> id = ParseId(line, line_no);
    if (!id.ok()) return id.status();
    ids.push_back(*id);
  }
  return ids;
}

absl::StatusOr<std::vector<int64_t>> ReadNodeList(const std::string& path) {
  absl::StatusOr<std::string> text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<std::vector<int64_t>> ids = ParseNodeList(*text);
  if (!ids.ok()) {
    return absl::Status(ids.status().code(),
                        absl::StrCat(path, ": ", ids.status().message()));
  }
  return ids;
}

std::string FormatNodeList(std::span<const int64_t> ids) {
  std::string out;
  for (int64_t id : ids) absl::StrAppend(&out, id, "\n");
  return out;
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteTextFile(const std::string& path, absl::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << text;
  out.flush();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace privimmune
