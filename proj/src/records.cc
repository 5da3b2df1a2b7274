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


#include "privimmune/records.h"

#include <fstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_replace.h"

namespace privimmune {
namespace {

std::string Text(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  return absl::StrCat("\"", absl::StrReplaceAll(s, {{"\"", "\"\""}}), "\"");
}

std::string Real(double x) { return absl::StrFormat("%.6g", x); }

}  // namespace

std::string FormatRecord(const ExperimentRecord& r) {
  return absl::StrCat(
      Text(r.graph), ",", Text(r.algorithm), ",", Real(r.epsilon), ",",
      Real(r.delta), ",", Real(r.epsilon1), ",", Real(r.target), ",", r.budget,
      ",", r.residual_max_degree, ",", Real(r.residual_spectral_radius), ",",
      Real(r.mean_sir_spread), ",", r.seed, ",", Real(r.wall_time_ms));
}

std::string FormatRecords(std::span<const ExperimentRecord> records) {
  std::string out = absl::StrCat(kRecordHeader, "\n");
  for (const ExperimentRecord& r : records) {
    absl::StrAppend(&out, FormatRecord(r), "\n");
  }
  return out;
}

absl::Status WriteRecords(std::span<const ExperimentRecord> records,
                          const std::string& path, bool append) {
  bool write_header = true;
  if (append) {
    std::ifstream in(path);
    std::string first;
    if (in && std::getline(in, first)) {
      if (first != kRecordHeader) {
        return absl::FailedPreconditionError(absl::StrCat(
            path, " exists but does not start with the record header"));
      }
      write_header = false;
    }
  }
  std::ofstream out(path, append && !write_header
                              ? std::ios::binary | std::ios::app
                              : std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  if (write_header) out << kRecordHeader << "\n";
  for (const ExperimentRecord& r : records) out << FormatRecord(r) << "\n";
  out.flush();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace privimmune
