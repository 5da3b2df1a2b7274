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


#ifndef PRIVIMMUNE_MULTICOVER_H_
#define PRIVIMMUNE_MULTICOVER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "privimmune/dp.h"

namespace privimmune {

// Multiplicity sentinel meaning "covers any requirement on this element".
// It is never used in arithmetic: min(kUnbounded, r) = r and subtracting it
// from a residual requirement floors the residual at zero.
inline constexpr int64_t kUnbounded = -1;

struct SetEntry {
  int32_t element = 0;
  int64_t multiplicity = 1;  // positive, or kUnbounded

  friend bool operator==(const SetEntry&, const SetEntry&) = default;
};

// min(m, r) with the kUnbounded convention.
inline int64_t CappedMultiplicity(int64_t multiplicity, int64_t requirement) {
  if (multiplicity == kUnbounded) return requirement;
  return multiplicity < requirement ? multiplicity : requirement;
}

// A multi-set multi-cover instance: universe 0..n-1, per-element requirements
// r_e, and a family of multi-sets with optional positive costs. Immutable.
class MultiCoverInstance {
 public:
  struct Incidence {
    int32_t set = 0;
    int64_t multiplicity = 1;
  };

  MultiCoverInstance() = default;

  // Entries of each set are sorted by element on construction; repeated
  // elements within one set, out-of-range elements, non-positive
  // multiplicities (other than kUnbounded), negative requirements and
  // non-positive costs are rejected.
  static absl::StatusOr<MultiCoverInstance> Create(
      int32_t universe_size, std::vector<int64_t> requirements,
      std::vector<std::vector<SetEntry>> sets,
      std::optional<std::vector<double>> costs = std::nullopt);

  int32_t universe_size() const { return universe_size_; }
  int32_t num_sets() const { return static_cast<int32_t>(sets_.size()); }
  std::span<const int64_t> requirements() const { return requirements_; }
  int64_t requirement(int32_t e) const { return requirements_[e]; }
  std::span<const SetEntry> set(int32_t i) const { return sets_[i]; }
  std::span<const Incidence> sets_containing(int32_t e) const {
    return incidence_[e];
  }

  bool weighted() const { return costs_.has_value(); }
  // Cost of set i; 1 for unweighted instances.
  double cost(int32_t i) const { return costs_ ? (*costs_)[i] : 1.0; }
  const std::optional<std::vector<double>>& costs() const { return costs_; }

  // q: largest number of distinct elements in one set.
  int32_t max_set_size() const { return max_set_size_; }
  // f: largest number of sets containing one element (ignoring multiplicity).
  int32_t max_frequency() const { return max_frequency_; }
  // M: sum of requirements.
  int64_t total_requirement() const { return total_requirement_; }
  // W: largest cost (1 for unweighted instances).
  double max_cost() const;

  // First element whose requirement exceeds what all sets together provide.
  std::optional<int32_t> FirstInfeasibleElement() const;

  friend bool operator==(const MultiCoverInstance& a,
                         const MultiCoverInstance& b) {
    return a.universe_size_ == b.universe_size_ &&
           a.requirements_ == b.requirements_ && a.sets_ == b.sets_ &&
           a.costs_ == b.costs_;
  }

 private:
  int32_t universe_size_ = 0;
  std::vector<int64_t> requirements_;
  std::vector<std::vector<SetEntry>> sets_;
  std::optional<std::vector<double>> costs_;
  std::vector<std::vector<Incidence>> incidence_;
  int32_t max_set_size_ = 0;
  int32_t max_frequency_ = 0;
  int64_t total_requirement_ = 0;
};

// Remaining requirement r_e^(i) after some sets have been taken.
class ResidualRequirements {
 public:
  explicit ResidualRequirements(const MultiCoverInstance& inst)
      : values_(inst.requirements().begin(), inst.requirements().end()),
        total_(inst.total_requirement()) {}

  int64_t operator[](int32_t e) const { return values_[e]; }
  std::span<const int64_t> values() const { return values_; }
  int64_t total() const { return total_; }

  // r_e <- max(0, r_e - m(S, e)) for every e in S.
  void Apply(const MultiCoverInstance& inst, int32_t set_index);

 private:
  std::vector<int64_t> values_;
  int64_t total_;
};

// A(S) = sum_{e in S} min(m(S, e), r_e).
int64_t Utility(const MultiCoverInstance& inst, int32_t set_index,
                const ResidualRequirements& residual);

// Implicit solution: an ordering of every set index.
struct ImplicitSolution {
  std::vector<int32_t> permutation;
  // Utility of each set at the moment it was selected.
  std::vector<double> trace;
  // L_i: maximum residual utility over the sets not yet selected after the
  // first i selections, for i = 0..m (L_m = 0).
  std::vector<double> max_residual_utility;
  // Exponent scale of the exponential mechanism that produced the ordering.
  double eps_prime = 0.0;
  // Weighted variant only: number of times the dummy `halve` set was drawn.
  int64_t halve_selections = 0;
};

// eps' = eps / (2 ln(e / delta)).
double MulticoverEpsPrime(double epsilon, double delta);

struct PermutationOptions {
  // Recompute every utility from scratch at each step and fail if the
  // incrementally maintained values disagree. Debug aid; O(m * q) per step.
  bool verify_incremental = false;
};

// Private implicit multi-cover: repeatedly samples a remaining set with
// probability proportional to exp(eps' * A(S)), then updates residual
// requirements. Once every residual is zero the remaining sets all have
// utility 0, so the rest of the order is drawn as a uniform shuffle, which is
// the same distribution. Requires an unweighted instance.
absl::StatusOr<ImplicitSolution> PrivatePermutation(
    const MultiCoverInstance& inst, double epsilon, double delta, Rng& rng,
    const PermutationOptions& options = {});

// Same mechanism with the exponent scale given directly.
absl::StatusOr<ImplicitSolution> PrivatePermutationWithEpsPrime(
    const MultiCoverInstance& inst, double eps_prime, Rng& rng,
    const PermutationOptions& options = {});

// Decodes an ordering into a cover: for each element, the sets in order that
// strictly increase its capped coverage min(sum m, r_e). Returns the union in
// ordering position order. Fails on a non-permutation or an infeasible
// instance (naming the element).
absl::StatusOr<std::vector<int32_t>> DecodeCover(
    const MultiCoverInstance& inst, std::span<const int32_t> permutation);

struct WeightedOptions {
  // Constant c in T = c * (ln m + ln ln(M W)) / eps'.
  double halve_constant = 3.0;
};

// Weighted variant with the halving schedule. Utilities are
// u(S) = A(S) - C(S) / theta, a dummy `halve` candidate of utility -T is
// never removed, and drawing it halves theta (starting at M) until
// theta < 1 / W. Costs are normalized so the cheapest set costs 1. The output
// is the selected order followed by a uniform shuffle of untouched sets.
absl::StatusOr<ImplicitSolution> WeightedPrivatePermutation(
    const MultiCoverInstance& inst, double epsilon, double delta, Rng& rng,
    const WeightedOptions& options = {});

// Non-private greedy baseline: picks the set of largest current utility
// (utility per cost when weighted), lowest index on ties, until every
// requirement is met.
absl::StatusOr<std::vector<int32_t>> GreedyCover(
    const MultiCoverInstance& inst);

struct CoverOptimum {
  double cost = 0.0;
  std::vector<int32_t> witness;
};

inline constexpr int32_t kMaxBruteForceSets = 20;

// Exact minimum-cost cover by subset enumeration (m <= kMaxBruteForceSets).
absl::StatusOr<CoverOptimum> BruteForceOpt(const MultiCoverInstance& inst);

inline constexpr int32_t kMaxExactPermutationSets = 8;

// Exact probability that PrivatePermutationWithEpsPrime emits `permutation`:
// the product over steps of the softmax weight of the chosen set among the
// remaining ones, with residual-updated utilities.
absl::StatusOr<double> ExactPermutationProbability(
    const MultiCoverInstance& inst, std::span<const int32_t> permutation,
    double eps_prime);

}  // namespace privimmune

#endif  // PRIVIMMUNE_MULTICOVER_H_
