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


#include "privimmune/instance_io.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"

namespace privimmune {
namespace {

absl::Status LineError(int line, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrFormat("line %d: %s", line, what));
}

std::vector<absl::string_view> Tokens(absl::string_view line) {
  return absl::StrSplit(line, absl::ByAnyChar(" \t\r"), absl::SkipEmpty());
}

}  // namespace

std::string SerializeInstance(const MultiCoverInstance& inst) {
  std::string out =
      absl::StrCat(inst.universe_size(), " ", inst.num_sets(), "\n");
  for (int32_t e = 0; e < inst.universe_size(); ++e) {
    absl::StrAppend(&out, e, " ", inst.requirement(e), "\n");
  }
  for (int32_t s = 0; s < inst.num_sets(); ++s) {
    absl::StrAppend(&out, s);
    if (inst.weighted()) absl::StrAppendFormat(&out, " %.17g", inst.cost(s));
    const auto entries = inst.set(s);
    for (size_t k = 0; k < entries.size(); ++k) {
      absl::StrAppend(&out, k == 0 ? " " : ",", entries[k].element, ":");
      if (entries[k].multiplicity == kUnbounded) {
        out += "*";
      } else {
        absl::StrAppend(&out, entries[k].multiplicity);
      }
    }
    out += "\n";
  }
  return out;
}

absl::StatusOr<MultiCoverInstance> ParseInstance(absl::string_view text) {
  std::vector<absl::string_view> lines = absl::StrSplit(text, '\n');
  size_t next = 0;
  int line_no = 0;
  auto next_line = [&]() -> std::optional<absl::string_view> {
    while (next < lines.size()) {
      absl::string_view line = lines[next++];
      ++line_no;
      if (!Tokens(line).empty()) return line;
    }
    return std::nullopt;
  };

  std::optional<absl::string_view> header = next_line();
  if (!header) return absl::InvalidArgumentError("empty instance text");
  std::vector<absl::string_view> head = Tokens(*header);
  int32_t n = 0;
  int32_t m = 0;
  if (head.size() != 2 || !absl::SimpleAtoi(head[0], &n) ||
      !absl::SimpleAtoi(head[1], &m) || n < 0 || m < 0) {
    return LineError(line_no, "expected header \"n m\"");
  }

  std::vector<int64_t> requirements(n, 0);
  for (int32_t e = 0; e < n; ++e) {
    std::optional<absl::string_view> line = next_line();
    if (!line) return LineError(line_no, "missing requirement line");
    std::vector<absl::string_view> tok = Tokens(*line);
    int32_t element = 0;
    int64_t r = 0;
    if (tok.size() != 2 || !absl::SimpleAtoi(tok[0], &element) ||
        !absl::SimpleAtoi(tok[1], &r)) {
      return LineError(line_no, "expected \"e r_e\"");
    }
    if (element != e) {
      return LineError(line_no, absl::StrFormat("expected element %d", e));
    }
    requirements[e] = r;
  }

  std::vector<std::vector<SetEntry>> sets(m);
  std::vector<double> costs;
  std::optional<bool> weighted;
  for (int32_t s = 0; s < m; ++s) {
    std::optional<absl::string_view> line = next_line();
    if (!line) return LineError(line_no, "missing set line");
    std::vector<absl::string_view> tok = Tokens(*line);
    int32_t index = 0;
    if (!absl::SimpleAtoi(tok[0], &index) || index != s) {
      return LineError(line_no, absl::StrFormat("expected set index %d", s));
    }
    size_t pos = 1;
    const bool has_cost =
        pos < tok.size() && tok[pos].find(':') == absl::string_view::npos;
    if (weighted.has_value() && *weighted != has_cost) {
      return LineError(line_no, "costs must be given for all sets or none");
    }
    weighted = has_cost;
    if (has_cost) {
      double c = 0.0;
      if (!absl::SimpleAtod(tok[pos], &c)) {
        return LineError(line_no, "bad cost");
      }
      costs.push_back(c);
      ++pos;
    }
    if (pos < tok.size()) {
      for (absl::string_view item : absl::StrSplit(tok[pos], ',')) {
        std::pair<absl::string_view, absl::string_view> kv =
            absl::StrSplit(item, absl::MaxSplits(':', 1));
        SetEntry entry;
        if (!absl::SimpleAtoi(kv.first, &entry.element)) {
          return LineError(line_no,
                           absl::StrCat("bad element in '", item, "'"));
        }
        if (kv.second == "*") {
          entry.multiplicity = kUnbounded;
        } else if (!absl::SimpleAtoi(kv.second, &entry.multiplicity) ||
                   entry.multiplicity <= 0) {
          return LineError(line_no,
                           absl::StrCat("bad multiplicity in '", item, "'"));
        }
        sets[s].push_back(entry);
      }
      ++pos;
    }
    if (pos != tok.size()) return LineError(line_no, "trailing tokens");
  }
  if (next_line()) return LineError(line_no, "unexpected extra line");

  std::optional<std::vector<double>> cost_vec;
  if (weighted.value_or(false)) cost_vec = std::move(costs);
  return MultiCoverInstance::Create(n, std::move(requirements), std::move(sets),
                                    std::move(cost_vec));
}

absl::StatusOr<MultiCoverInstance> ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstance(buffer.str());
}

absl::Status WriteInstanceFile(const MultiCoverInstance& inst,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << SerializeInstance(inst);
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace privimmune
