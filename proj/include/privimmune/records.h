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


#ifndef PRIVIMMUNE_RECORDS_H_
#define PRIVIMMUNE_RECORDS_H_

#include <cstdint>
#include <span>
#include <string>

#include "absl/status/status.h"

namespace privimmune {

inline constexpr char kRecordHeader[] =
    "graph,algorithm,epsilon,delta,epsilon1,target,budget,"
    "residual_max_degree,residual_spectral_radius,mean_sir_spread,seed,"
    "wall_time_ms";

// One experiment row. Reals print with 6 significant digits. A field that
// was not measured holds -1.
struct ExperimentRecord {
  std::string graph;
  std::string algorithm;
  double epsilon = 0.0;
  double delta = 0.0;
  double epsilon1 = 0.0;
  // D for degree targets, T or D for the spectral modes.
  double target = 0.0;
  int64_t budget = 0;
  int64_t residual_max_degree = -1;
  double residual_spectral_radius = -1.0;
  double mean_sir_spread = -1.0;
  uint64_t seed = 0;
  double wall_time_ms = 0.0;
};

// A single CSV line without the trailing newline. Text fields holding a
// comma, quote or newline are quoted with doubled inner quotes.
std::string FormatRecord(const ExperimentRecord& r);

// Header plus one line per record.
std::string FormatRecords(std::span<const ExperimentRecord> records);

// Writes header and rows. With `append`, an existing non-empty file keeps its
// content and receives rows only; its first line must be the header.
absl::Status WriteRecords(std::span<const ExperimentRecord> records,
                          const std::string& path, bool append = false);

}  // namespace privimmune

#endif  // PRIVIMMUNE_RECORDS_H_
