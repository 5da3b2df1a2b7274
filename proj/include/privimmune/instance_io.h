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


#ifndef PRIVIMMUNE_INSTANCE_IO_H_
#define PRIVIMMUNE_INSTANCE_IO_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "privimmune/multicover.h"

namespace privimmune {

// Line-oriented instance text:
//
//   n m
//   e r_e                        (n lines, elements in order)
//   i [cost] e:mult[,e:mult...]  (m lines, sets in order)
//
// A multiplicity of "*" is kUnbounded. The cost token is present on every set
// line of a weighted instance and on none otherwise; an empty set is just
// "i" or "i cost". Costs are printed with 17 significant digits so text and
// instance round-trip exactly.
std::string SerializeInstance(const MultiCoverInstance& inst);

absl::StatusOr<MultiCoverInstance> ParseInstance(absl::string_view text);

absl::StatusOr<MultiCoverInstance> ReadInstanceFile(const std::string& path);
absl::Status WriteInstanceFile(const MultiCoverInstance& inst,
                               const std::string& path);

}  // namespace privimmune

#endif  // PRIVIMMUNE_INSTANCE_IO_H_
