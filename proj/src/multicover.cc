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


#include "privimmune/multicover.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace privimmune {
namespace {

absl::Status CheckPermutation(const MultiCoverInstance& inst,
                              std::span<const int32_t> permutation) {
  const int32_t m = inst.num_sets();
  if (static_cast<int64_t>(permutation.size()) != m) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "permutation has %d entries for %d sets", permutation.size(), m));
  }
  std::vector<bool> seen(m, false);
  for (int32_t s : permutation) {
    if (s < 0 || s >= m || seen[s]) {
      return absl::InvalidArgumentError(
          absl::StrFormat("not a permutation of set indices (entry %d)", s));
    }
    seen[s] = true;
  }
  return absl::OkStatus();
}

absl::Status CheckFeasible(const MultiCoverInstance& inst) {
  if (std::optional<int32_t> e = inst.FirstInfeasibleElement()) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "infeasible instance: element %d needs %d but the sets provide less",
        *e, inst.requirement(*e)));
  }
  return absl::OkStatus();
}

int64_t ReducedRequirement(int64_t requirement, int64_t multiplicity) {
  if (multiplicity == kUnbounded) return 0;
  return std::max<int64_t>(0, requirement - multiplicity);
}

// Shared residual bookkeeping of the unweighted mechanism and the greedy
// baseline: applies set `chosen` and reports every utility change of a set
// that is still available through `on_change(set, delta)`.
template <typename IsAvailable, typename OnChange>
void ApplySet(const MultiCoverInstance& inst, int32_t chosen,
              std::vector<int64_t>& residual, int64_t& residual_total,
              IsAvailable is_available, OnChange on_change) {
  for (const SetEntry& entry : inst.set(chosen)) {
    const int64_t before = residual[entry.element];
    if (before == 0) continue;
    const int64_t after = ReducedRequirement(before, entry.multiplicity);
    residual[entry.element] = after;
    residual_total -= before - after;
    for (const auto& inc : inst.sets_containing(entry.element)) {
      if (!is_available(inc.set)) continue;
      const int64_t change = CappedMultiplicity(inc.multiplicity, after) -
                             CappedMultiplicity(inc.multiplicity, before);
      if (change != 0) on_change(inc.set, change);
    }
  }
}

int64_t UtilityFrom(const MultiCoverInstance& inst, int32_t set_index,
                    std::span<const int64_t> residual) {
  int64_t total = 0;
  for (const SetEntry& entry : inst.set(set_index)) {
    total += CappedMultiplicity(entry.multiplicity, residual[entry.element]);
  }
  return total;
}

bool CoversAll(const MultiCoverInstance& inst, uint32_t chosen_mask,
               std::vector<int64_t>& scratch) {
  scratch.assign(inst.requirements().begin(), inst.requirements().end());
  for (int32_t s = 0; s < inst.num_sets(); ++s) {
    if ((chosen_mask >> s & 1u) == 0) continue;
    for (const SetEntry& entry : inst.set(s)) {
      scratch[entry.element] =
          ReducedRequirement(scratch[entry.element], entry.multiplicity);
    }
  }
  return std::all_of(scratch.begin(), scratch.end(),
                     [](int64_t r) { return r == 0; });
}

}  // namespace

absl::StatusOr<MultiCoverInstance> MultiCoverInstance::Create(
    int32_t universe_size, std::vector<int64_t> requirements,
    std::vector<std::vector<SetEntry>> sets,
    std::optional<std::vector<double>> costs) {
  if (universe_size < 0) {
    return absl::InvalidArgumentError("negative universe size");
  }
  if (static_cast<int64_t>(requirements.size()) != universe_size) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%d requirements for a universe of %d",
                        requirements.size(), universe_size));
  }
  MultiCoverInstance inst;
  inst.universe_size_ = universe_size;
  for (int32_t e = 0; e < universe_size; ++e) {
    if (requirements[e] < 0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("element %d has negative requirement", e));
    }
    inst.total_requirement_ += requirements[e];
  }
  if (costs.has_value()) {
    if (costs->size() != sets.size()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%d costs for %d sets", costs->size(), sets.size()));
    }
    for (size_t i = 0; i < costs->size(); ++i) {
      const double c = (*costs)[i];
      if (!(c > 0.0) || !std::isfinite(c)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("set %d has non-positive cost %g", i, c));
      }
    }
  }
  inst.incidence_.resize(universe_size);
  for (size_t i = 0; i < sets.size(); ++i) {
    auto& entries = sets[i];
    std::sort(entries.begin(), entries.end(),
              [](const SetEntry& a, const SetEntry& b) {
                return a.element < b.element;
              });
    for (size_t k = 0; k < entries.size(); ++k) {
      const SetEntry& entry = entries[k];
      if (entry.element < 0 || entry.element >= universe_size) {
        return absl::OutOfRangeError(
            absl::StrFormat("set %d names element %d outside [0, %d)", i,
                            entry.element, universe_size));
      }
      if (entry.multiplicity <= 0 && entry.multiplicity != kUnbounded) {
        return absl::InvalidArgumentError(
            absl::StrFormat("set %d has multiplicity %d for element %d", i,
                            entry.multiplicity, entry.element));
      }
      if (k > 0 && entries[k - 1].element == entry.element) {
        return absl::InvalidArgumentError(
            absl::StrFormat("set %d lists element %d twice", i, entry.element));
      }
      inst.incidence_[entry.element].push_back(
          {static_cast<int32_t>(i), entry.multiplicity});
    }
    inst.max_set_size_ =
        std::max(inst.max_set_size_, static_cast<int32_t>(entries.size()));
  }
  for (const auto& inc : inst.incidence_) {
    inst.max_frequency_ =
        std::max(inst.max_frequency_, static_cast<int32_t>(inc.size()));
  }
  inst.requirements_ = std::move(requirements);
  inst.sets_ = std::move(sets);
  // With no sets a cost vector carries no information; keep it unweighted.
  if (costs.has_value() && costs->empty()) costs.reset();
  inst.costs_ = std::move(costs);
  return inst;
}

double MultiCoverInstance::max_cost() const {
  if (!costs_ || costs_->empty()) return 1.0;
  return *std::max_element(costs_->begin(), costs_->end());
}

std::optional<int32_t> MultiCoverInstance::FirstInfeasibleElement() const {
  for (int32_t e = 0; e < universe_size_; ++e) {
    int64_t available = 0;
    bool unbounded = false;
    for (const auto& inc : incidence_[e]) {
      if (inc.multiplicity == kUnbounded) {
        unbounded = true;
        break;
      }
      available += inc.multiplicity;
    }
    if (!unbounded && available < requirements_[e]) return e;
  }
  return std::nullopt;
}

void ResidualRequirements::Apply(const MultiCoverInstance& inst,
                                 int32_t set_index) {
  for (const SetEntry& entry : inst.set(set_index)) {
    const int64_t before = values_[entry.element];
    const int64_t after = ReducedRequirement(before, entry.multiplicity);
    values_[entry.element] = after;
    total_ -= before - after;
  }
}

int64_t Utility(const MultiCoverInstance& inst, int32_t set_index,
                const ResidualRequirements& residual) {
  return UtilityFrom(inst, set_index, residual.values());
}

double MulticoverEpsPrime(double epsilon, double delta) {
  return epsilon / (2.0 * std::log(std::numbers::e / delta));
}

absl::StatusOr<ImplicitSolution> PrivatePermutation(
    const MultiCoverInstance& inst, double epsilon, double delta, Rng& rng,
    const PermutationOptions& options) {
  absl::StatusOr<PrivacyBudget> budget = PrivacyBudget::Create(epsilon, delta);
  if (!budget.ok()) return budget.status();
  return PrivatePermutationWithEpsPrime(
      inst, MulticoverEpsPrime(epsilon, delta), rng, options);
}

absl::StatusOr<ImplicitSolution> PrivatePermutationWithEpsPrime(
    const MultiCoverInstance& inst, double eps_prime, Rng& rng,
    const PermutationOptions& options) {
  if (inst.weighted()) {
    return absl::InvalidArgumentError(
        "weighted instance: use WeightedPrivatePermutation");
  }
  if (!(eps_prime >= 0.0) || !std::isfinite(eps_prime)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "eps' must be finite and non-negative, got %g", eps_prime));
  }
  const int32_t m = inst.num_sets();
  std::vector<int64_t> residual(inst.requirements().begin(),
                                inst.requirements().end());
  int64_t residual_total = inst.total_requirement();
  std::vector<double> initial(m);
  for (int32_t s = 0; s < m; ++s) {
    initial[s] = static_cast<double>(UtilityFrom(inst, s, residual));
  }
  ExponentialSampler sampler(initial, eps_prime);

  ImplicitSolution sol;
  sol.eps_prime = eps_prime;
  sol.permutation.reserve(m);
  sol.trace.reserve(m);
  sol.max_residual_utility.reserve(m + 1);
  sol.max_residual_utility.push_back(m > 0 ? sampler.MaxUtility() : 0.0);

  auto is_available = [&](int32_t s) { return sampler.active(s); };
  auto on_change = [&](int32_t s, int64_t change) {
    sampler.SetUtility(s, sampler.utility(s) + static_cast<double>(change));
  };
  while (sampler.num_active() > 0) {
    if (residual_total == 0) {
      std::vector<int32_t> rest;
      rest.reserve(sampler.num_active());
      for (int32_t s = 0; s < m; ++s) {
        if (sampler.active(s)) rest.push_back(s);
      }
      rng.Shuffle(std::span<int32_t>(rest));
      for (int32_t s : rest) {
        sol.permutation.push_back(s);
        sol.trace.push_back(0.0);
        sol.max_residual_utility.push_back(0.0);
      }
      break;
    }
    const auto chosen = static_cast<int32_t>(sampler.Sample(rng));
    sol.permutation.push_back(chosen);
    sol.trace.push_back(sampler.utility(chosen));
    sampler.Deactivate(chosen);
    ApplySet(inst, chosen, residual, residual_total, is_available, on_change);
    sol.max_residual_utility.push_back(
        sampler.num_active() > 0 ? sampler.MaxUtility() : 0.0);

    if (options.verify_incremental) {
      for (int32_t s = 0; s < m; ++s) {
        if (!sampler.active(s)) continue;
        const auto fresh = static_cast<double>(UtilityFrom(inst, s, residual));
        if (fresh != sampler.utility(s)) {
          return absl::InternalError(absl::StrFormat(
              "incremental utility of set %d is %g, recomputed %g", s,
              sampler.utility(s), fresh));
        }
      }
    }
  }
  return sol;
}

absl::StatusOr<std::vector<int32_t>> DecodeCover(
    const MultiCoverInstance& inst, std::span<const int32_t> permutation) {
  if (absl::Status s = CheckPermutation(inst, permutation); !s.ok()) return s;
  if (absl::Status s = CheckFeasible(inst); !s.ok()) return s;
  std::vector<int64_t> covered(inst.universe_size(), 0);
  std::vector<int32_t> selected;
  for (int32_t s : permutation) {
    bool contributes = false;
    for (const SetEntry& entry : inst.set(s)) {
      const int64_t need = inst.requirement(entry.element);
      int64_t& have = covered[entry.element];
      if (have >= need) continue;
      have = entry.multiplicity == kUnbounded
                 ? need
                 : std::min(need, have + entry.multiplicity);
      contributes = true;
    }
    if (contributes) selected.push_back(s);
  }
  return selected;
}

absl::StatusOr<ImplicitSolution> WeightedPrivatePermutation(
    const MultiCoverInstance& inst, double epsilon, double delta, Rng& rng,
    const WeightedOptions& options) {
  if (!inst.weighted()) {
    return absl::InvalidArgumentError(
        "weighted permutation needs per-set costs");
  }
  absl::StatusOr<PrivacyBudget> budget = PrivacyBudget::Create(epsilon, delta);
  if (!budget.ok()) return budget.status();
  if (!(options.halve_constant > 0.0)) {
    return absl::InvalidArgumentError("halve constant must be positive");
  }
  const int32_t m = inst.num_sets();
  ImplicitSolution sol;
  sol.eps_prime = MulticoverEpsPrime(epsilon, delta);
  if (m == 0) {
    sol.max_residual_utility.push_back(0.0);
    return sol;
  }

  const auto& raw = *inst.costs();
  const double min_cost = *std::min_element(raw.begin(), raw.end());
  std::vector<double> cost(m);
  for (int32_t s = 0; s < m; ++s) cost[s] = raw[s] / min_cost;
  const double max_cost = *std::max_element(cost.begin(), cost.end());
  const double total = static_cast<double>(inst.total_requirement());
  const double log_log = std::max(
      0.0, std::log(std::log(std::max(total * max_cost, std::numbers::e))));
  const double halve_penalty = options.halve_constant *
                               (std::log(static_cast<double>(m)) + log_log) /
                               sol.eps_prime;

  std::vector<int64_t> residual(inst.requirements().begin(),
                                inst.requirements().end());
  std::vector<bool> available(m, true);
  auto max_remaining = [&]() {
    double best = 0.0;
    for (int32_t s = 0; s < m; ++s) {
      if (available[s]) {
        best =
            std::max(best, static_cast<double>(UtilityFrom(inst, s, residual)));
      }
    }
    return best;
  };
  auto take = [&](int32_t s) {
    sol.permutation.push_back(s);
    sol.trace.push_back(static_cast<double>(UtilityFrom(inst, s, residual)));
    available[s] = false;
    for (const SetEntry& entry : inst.set(s)) {
      residual[entry.element] =
          ReducedRequirement(residual[entry.element], entry.multiplicity);
    }
    sol.max_residual_utility.push_back(max_remaining());
  };
  sol.max_residual_utility.push_back(max_remaining());

  double theta = total;
  std::vector<int32_t> candidates;
  std::vector<double> scores;
  while (theta >= 1.0 / max_cost) {
    candidates.clear();
    scores.clear();
    for (int32_t s = 0; s < m; ++s) {
      if (!available[s]) continue;
      candidates.push_back(s);
      scores.push_back(static_cast<double>(UtilityFrom(inst, s, residual)) -
                       cost[s] / theta);
    }
    candidates.push_back(-1);  // halve
    scores.push_back(-halve_penalty);
    absl::StatusOr<size_t> pick = ExponentialChoice(scores, sol.eps_prime, rng);
    if (!pick.ok()) return pick.status();
    const int32_t chosen = candidates[*pick];
    if (chosen < 0) {
      theta /= 2.0;
      ++sol.halve_selections;
    } else {
      take(chosen);
    }
  }

  std::vector<int32_t> rest;
  for (int32_t s = 0; s < m; ++s) {
    if (available[s]) rest.push_back(s);
  }
  rng.Shuffle(std::span<int32_t>(rest));
  for (int32_t s : rest) take(s);
  return sol;
}

absl::StatusOr<std::vector<int32_t>> GreedyCover(
    const MultiCoverInstance& inst) {
  if (absl::Status s = CheckFeasible(inst); !s.ok()) return s;
  const int32_t m = inst.num_sets();
  std::vector<int64_t> residual(inst.requirements().begin(),
                                inst.requirements().end());
  int64_t residual_total = inst.total_requirement();
  std::vector<int64_t> utility(m);
  for (int32_t s = 0; s < m; ++s) utility[s] = UtilityFrom(inst, s, residual);
  std::vector<bool> available(m, true);
  std::vector<int32_t> selected;
  auto is_available = [&](int32_t s) { return available[s]; };
  auto on_change = [&](int32_t s, int64_t change) { utility[s] += change; };
  while (residual_total > 0) {
    int32_t best = -1;
    double best_score = 0.0;
    for (int32_t s = 0; s < m; ++s) {
      if (!available[s] || utility[s] == 0) continue;
      const double score = static_cast<double>(utility[s]) / inst.cost(s);
      if (best < 0 || score > best_score) {
        best = s;
        best_score = score;
      }
    }
    if (best < 0) {
      return absl::InternalError("greedy cover stalled on a feasible instance");
    }
    selected.push_back(best);
    available[best] = false;
    ApplySet(inst, best, residual, residual_total, is_available, on_change);
  }
  return selected;
}

absl::StatusOr<CoverOptimum> BruteForceOpt(const MultiCoverInstance& inst) {
  const int32_t m = inst.num_sets();
  if (m > kMaxBruteForceSets) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "brute force supports at most %d sets, got %d", kMaxBruteForceSets, m));
  }
  if (absl::Status s = CheckFeasible(inst); !s.ok()) return s;
  std::vector<int64_t> scratch;
  auto witness_of = [m](uint32_t mask) {
    std::vector<int32_t> out;
    for (int32_t s = 0; s < m; ++s) {
      if (mask >> s & 1u) out.push_back(s);
    }
    return out;
  };
  const uint32_t full = m == 32 ? ~0u : ((1u << m) - 1u);
  if (!inst.weighted()) {
    // Subsets in order of size; the first feasible one is optimal.
    for (int32_t k = 0; k <= m; ++k) {
      if (k == 0) {
        if (CoversAll(inst, 0u, scratch)) return CoverOptimum{0.0, {}};
        continue;
      }
      uint32_t mask = (1u << k) - 1u;
      while (mask <= full) {
        if (CoversAll(inst, mask, scratch)) {
          return CoverOptimum{static_cast<double>(k), witness_of(mask)};
        }
        // Gosper's hack: next mask with the same popcount.
        const uint32_t c = mask & (~mask + 1u);
        const uint32_t r = mask + c;
        if (r == 0) break;
        mask = (((r ^ mask) >> 2) / c) | r;
      }
    }
    return absl::InternalError("no cover found on a feasible instance");
  }
  double best = std::numeric_limits<double>::infinity();
  uint32_t best_mask = full;
  for (uint32_t mask = 0; mask <= full; ++mask) {
    double cost = 0.0;
    for (int32_t s = 0; s < m; ++s) {
      if (mask >> s & 1u) cost += inst.cost(s);
    }
    if (cost < best && CoversAll(inst, mask, scratch)) {
      best = cost;
      best_mask = mask;
    }
    if (mask == full) break;
  }
  return CoverOptimum{best, witness_of(best_mask)};
}

absl::StatusOr<double> ExactPermutationProbability(
    const MultiCoverInstance& inst, std::span<const int32_t> permutation,
    double eps_prime) {
  const int32_t m = inst.num_sets();
  if (m > kMaxExactPermutationSets) {
    return absl::InvalidArgumentError(
        absl::StrFormat("exact probability supports at most %d sets, got %d",
                        kMaxExactPermutationSets, m));
  }
  if (absl::Status s = CheckPermutation(inst, permutation); !s.ok()) return s;
  ResidualRequirements residual(inst);
  std::vector<bool> available(m, true);
  double log_prob = 0.0;
  for (int32_t chosen : permutation) {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> scaled;
    for (int32_t s = 0; s < m; ++s) {
      if (!available[s]) continue;
      scaled.push_back(eps_prime *
                       static_cast<double>(Utility(inst, s, residual)));
      best = std::max(best, scaled.back());
    }
    double norm = 0.0;
    for (double x : scaled) norm += std::exp(x - best);
    const double chosen_scaled =
        eps_prime * static_cast<double>(Utility(inst, chosen, residual));
    log_prob += chosen_scaled - best - std::log(norm);
    available[chosen] = false;
    residual.Apply(inst, chosen);
  }
  return std::exp(log_prob);
}

}  // namespace privimmune
