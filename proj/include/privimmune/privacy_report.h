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


#ifndef PRIVIMMUNE_PRIVACY_REPORT_H_
#define PRIVIMMUNE_PRIVACY_REPORT_H_

#include <string>
#include <utility>
#include <vector>

namespace privimmune {

// Which datasets count as neighbors when a guarantee is claimed.
enum class NeighborModel {
  // Graphs differing in one edge. Graph-to-cover reductions pay the
  // group-privacy rescaling for the number of cover coordinates one edge moves.
  kEdge,
  // Cover instances differing in one requirement or one multiplicity. A relaxed
  // model used for comparison runs; no edge-level guarantee is claimed.
  kMultiset,
};

const char* NeighborModelName(NeighborModel model);

// One accounted stage of a mechanism, with the run's numbers substituted into
// the stated cost expression.
struct StageGuarantee {
  std::string stage;
  std::string expression;
  double epsilon = 0.0;
  double delta = 0.0;
};

// Per-run privacy statement. Stages are listed separately and never summed.
struct PrivacyReport {
  std::string mechanism;
  NeighborModel model = NeighborModel::kEdge;
  std::vector<StageGuarantee> stages;
  // Every derived internal parameter, in insertion order.
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::string> caveats;

  void AddParameter(std::string name, double value) {
    parameters.emplace_back(std::move(name), value);
  }
  // Value of a named parameter; NaN when absent.
  double Parameter(const std::string& name) const;

  std::string ToJson() const;
};

}  // namespace privimmune

#endif  // PRIVIMMUNE_PRIVACY_REPORT_H_
