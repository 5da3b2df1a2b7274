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


#ifndef PRIVIMMUNE_DP_H_
#define PRIVIMMUNE_DP_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "absl/functional/function_ref.h"
#include "absl/status/statusor.h"

namespace privimmune {

// (epsilon, delta) for the exponential-mechanism stage plus the separate
// epsilon1 spent by a sparse-vector stopping rule. epsilon1 == 0 means the
// run has no sparse-vector stage.
struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 1e-3;
  double epsilon1 = 0.0;

  static absl::StatusOr<PrivacyBudget> Create(double epsilon, double delta,
                                              double epsilon1 = 0.0);
};

// Mixes (seed, index) into an independent child seed (splitmix64 finalizer).
uint64_t SplitSeed(uint64_t seed, uint64_t index);

// Seeded pseudo-random stream. Identical seeds replay identical draws on every
// platform: uniforms are built from raw 64-bit engine output rather than
// through the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t seed() const { return seed_; }
  uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform integer in [0, bound). bound must be positive.
  uint64_t UniformInt(uint64_t bound);

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformInt(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// One draw from Laplace(0, scale) by inverse CDF on a single uniform.
absl::StatusOr<double> SampleLaplace(double scale, Rng& rng);

// Samples index i with probability exp(eps_prime * u_i) / sum_j exp(eps_prime
// * u_j). The caller folds any sensitivity factor into eps_prime.
absl::StatusOr<size_t> ExponentialChoice(std::span<const double> utilities,
                                         double eps_prime, Rng& rng);

// Result of the below-threshold sparse-vector rule. index is empty when the
// query stream ran out without a crossing.
struct SparseVectorResult {
  std::optional<int64_t> index;
  int64_t queries_evaluated = 0;
  double noisy_threshold = 0.0;
};

// Sparse-vector stopping rule with the subtractive sign convention:
//   noisy threshold  T' = threshold - Lap(2 / eps1)
//   noisy query      g_i = q_i - Lap(4 / eps1)
// Returns the first i with g_i <= T'. `query(i)` is evaluated lazily for
// i = 0, 1, ... and returns nullopt once the stream is exhausted.
absl::StatusOr<SparseVectorResult> SparseVectorBelow(
    absl::FunctionRef<std::optional<double>(int64_t)> query, double threshold,
    double eps1, Rng& rng);

// Exponential-mechanism sampler over a mutable pool of candidates, used when
// the same pool is sampled without replacement many times. Weights are kept in
// a sum tree so that an update or a draw costs O(log n). Internally weights are
// exp(eps_prime * (u - ref)) where ref tracks the current maximum utility, so
// arbitrarily large utilities never overflow.
class ExponentialSampler {
 public:
  ExponentialSampler(std::span<const double> utilities, double eps_prime);

  size_t size() const { return utilities_.size(); }
  size_t num_active() const { return num_active_; }
  bool active(size_t i) const { return active_[i]; }
  double utility(size_t i) const { return utilities_[i]; }
  // Maximum utility over active candidates; -inf when none are active.
  double MaxUtility() const;

  void SetUtility(size_t i, double utility);
  void Deactivate(size_t i);

  // Draws an active index. Requires num_active() > 0.
  size_t Sample(Rng& rng);

 private:
  double WeightOf(size_t i) const;
  void Rebuild();
  void Refresh(size_t leaf);

  double eps_prime_;
  std::vector<double> utilities_;
  std::vector<bool> active_;
  size_t num_active_ = 0;
  size_t leaves_ = 1;
  double reference_ = 0.0;
  std::vector<double> sum_;
  std::vector<double> max_;
};

}  // namespace privimmune

#endif  // PRIVIMMUNE_DP_H_
