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


#ifndef PRIVIMMUNE_GENERATORS_H_
#define PRIVIMMUNE_GENERATORS_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "privimmune/graph.h"

namespace privimmune {

enum class GeneratorKind {
  kErdosRenyi,
  kChungLuPowerLaw,
  kStar,
  kCycle,
  kComplete,
};

// Textual form: "KIND:key=value,...", e.g.
//   erdos-renyi:n=100,p=0.05,seed=7
//   chung-lu-powerlaw:n=1000,gamma=2.5,dmin=2,dmax=60,seed=1
//   star:n=6   cycle:n=10   complete:n=5
// chung-lu-powerlaw targets P(deg = k) ~ k^-gamma: expected degrees are
// w_i = dmax * (i + 1)^(-1 / (gamma - 1)) clipped to [dmin, dmax].
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kErdosRenyi;
  int32_t n = 0;
  double p = 0.0;
  double gamma = 2.5;
  double dmin = 1.0;
  // 0 selects sqrt(n).
  double dmax = 0.0;
  uint64_t seed = 0;

  static absl::StatusOr<GeneratorSpec> Parse(absl::string_view text);
  // Canonical text form; Parse(Describe()) reproduces the spec.
  std::string Describe() const;
};

const char* GeneratorKindName(GeneratorKind kind);

// Deterministic for a fixed spec, seed included.
absl::StatusOr<Graph> Generate(const GeneratorSpec& spec);

}  // namespace privimmune

#endif  // PRIVIMMUNE_GENERATORS_H_
