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


#ifndef PRIVIMMUNE_SIR_H_
#define PRIVIMMUNE_SIR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "privimmune/graph.h"

namespace privimmune {

struct SirConfig {
  double transmission_prob = 0.2;
  int32_t num_initial = 1;
  int32_t num_trials = 100;
  uint64_t seed = 0;
  // 0 picks the hardware concurrency. Results do not depend on it.
  int32_t num_threads = 0;
};

struct SirOutcome {
  double mean_final_size = 0.0;
  // Sample standard deviation (n - 1 denominator); 0 for a single trial.
  double std_final_size = 0.0;
  // Indexed by trial.
  std::vector<int32_t> final_sizes;
};

// Discrete-time SIR on g minus `vaccinated`. Each trial draws num_initial
// distinct survivors as initial infectives (all survivors if fewer); every
// infected node transmits once to each susceptible neighbor with probability
// p and then recovers. The coin of edge {u, v} in a trial is a hash of the
// trial seed and the edge, so for a fixed seed the final size is
// non-decreasing in p trial by trial.
absl::StatusOr<SirOutcome> SimulateSir(const Graph& g,
                                       std::span<const NodeId> vaccinated,
                                       const SirConfig& cfg);

}  // namespace privimmune

#endif  // PRIVIMMUNE_SIR_H_
