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


#include "privimmune/privacy_report.h"

#include <limits>

#include "json.hpp"

namespace privimmune {

const char* NeighborModelName(NeighborModel model) {
  switch (model) {
    case NeighborModel::kEdge:
      return "edge";
    case NeighborModel::kMultiset:
      return "multiset";
  }
  return "unknown";
}

double PrivacyReport::Parameter(const std::string& name) const {
  for (const auto& [key, value] : parameters) {
    if (key == name) return value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string PrivacyReport::ToJson() const {
  nlohmann::ordered_json j;
  j["mechanism"] = mechanism;
  j["neighbor_model"] = NeighborModelName(model);
  j["stages"] = nlohmann::ordered_json::array();
  for (const StageGuarantee& s : stages) {
    nlohmann::ordered_json entry;
    entry["stage"] = s.stage;
    entry["expression"] = s.expression;
    entry["epsilon"] = s.epsilon;
    entry["delta"] = s.delta;
    j["stages"].push_back(std::move(entry));
  }
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : parameters) params[key] = value;
  j["parameters"] = std::move(params);
  j["caveats"] = caveats;
  return j.dump(2);
}

}  // namespace privimmune
