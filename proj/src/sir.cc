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


#include "privimmune/sir.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "privimmune/dp.h"

namespace privimmune {
namespace {

double EdgeCoin(uint64_t trial_seed, NodeId u, NodeId v) {
  const auto lo = static_cast<uint64_t>(std::min(u, v));
  const auto hi = static_cast<uint64_t>(std::max(u, v));
  const uint64_t h = SplitSeed(SplitSeed(trial_seed, lo), hi);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

int32_t RunTrial(const Graph& g, const NodeMask& mask,
                 std::span<const NodeId> survivors, const SirConfig& cfg,
                 uint64_t trial_seed) {
  Rng rng(trial_seed);
  std::vector<NodeId> pool(survivors.begin(), survivors.end());
  const size_t seeds =
      std::min(pool.size(), static_cast<size_t>(cfg.num_initial));
  // Partial Fisher-Yates: the first `seeds` slots become the initial set.
  for (size_t i = 0; i < seeds; ++i) {
    const size_t j = i + static_cast<size_t>(rng.UniformInt(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<bool> infected(g.num_nodes(), false);
  std::vector<NodeId> frontier(pool.begin(), pool.begin() + seeds);
  for (NodeId v : frontier) infected[v] = true;
  auto total = static_cast<int32_t>(frontier.size());
  std::vector<NodeId> next;
  while (!frontier.empty()) {
    next.clear();
    for (NodeId u : frontier) {
      for (NodeId v : g.neighbors(u)) {
        if (mask.removed(v) || infected[v]) continue;
        if (EdgeCoin(trial_seed, u, v) < cfg.transmission_prob) {
          infected[v] = true;
          next.push_back(v);
        }
      }
    }
    total += static_cast<int32_t>(next.size());
    frontier.swap(next);
  }
  return total;
}

}  // namespace

absl::StatusOr<SirOutcome> SimulateSir(const Graph& g,
                                       std::span<const NodeId> vaccinated,
                                       const SirConfig& cfg) {
  if (!(cfg.transmission_prob >= 0.0 && cfg.transmission_prob <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("transmission probability must lie in [0, 1], got %g",
                        cfg.transmission_prob));
  }
  if (cfg.num_initial < 0 || cfg.num_initial > g.num_nodes()) {
    return absl::InvalidArgumentError(
        absl::StrFormat("initial infectives must lie in [0, %d], got %d",
                        g.num_nodes(), cfg.num_initial));
  }
  if (cfg.num_trials <= 0) {
    return absl::InvalidArgumentError("need at least one trial");
  }
  absl::StatusOr<NodeMask> mask = RemoveNodes(g, vaccinated);
  if (!mask.ok()) return mask.status();
  std::vector<NodeId> survivors;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (!mask->removed(v)) survivors.push_back(v);
  }

  SirOutcome out;
  out.final_sizes.assign(cfg.num_trials, 0);
  int32_t threads =
      cfg.num_threads > 0
          ? cfg.num_threads
          : static_cast<int32_t>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, cfg.num_trials);
  std::atomic<int32_t> next_trial{0};
  auto worker = [&] {
    for (int32_t t = next_trial++; t < cfg.num_trials; t = next_trial++) {
      out.final_sizes[t] =
          RunTrial(g, *mask, survivors, cfg, SplitSeed(cfg.seed, t));
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int32_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  std::vector<int32_t> sorted = out.final_sizes;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (int32_t s : sorted) sum += s;
  out.mean_final_size = sum / n;
  if (sorted.size() > 1) {
    double ss = 0.0;
    for (int32_t s : sorted) {
      ss += (s - out.mean_final_size) * (s - out.mean_final_size);
    }
    out.std_final_size = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

}  // namespace privimmune
