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


#include "privimmune/dp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace privimmune {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Re-anchor the sampler when the best weight would drop below exp(-kRescale).
constexpr double kRescale = 100.0;

}  // namespace

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon,
                                                    double delta,
                                                    double epsilon1) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "epsilon must be positive and finite, got %g", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  if (!(epsilon1 >= 0.0) || !std::isfinite(epsilon1)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon1 must be non-negative, got %g", epsilon1));
  }
  return PrivacyBudget{epsilon, delta, epsilon1};
}

uint64_t SplitSeed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

uint64_t Rng::UniformInt(uint64_t bound) {
  // Rejection on the top of the range keeps the draw exactly uniform.
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

absl::StatusOr<double> SampleLaplace(double scale, Rng& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("Laplace scale must be positive, got %g", scale));
  }
  double u;
  do {
    u = rng.Uniform() - 0.5;
  } while (u == -0.5);
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

absl::StatusOr<size_t> ExponentialChoice(std::span<const double> utilities,
                                         double eps_prime, Rng& rng) {
  if (utilities.empty()) {
    return absl::InvalidArgumentError("exponential choice over an empty list");
  }
  if (!(eps_prime >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("eps_prime must be non-negative, got %g", eps_prime));
  }
  const double best = *std::max_element(utilities.begin(), utilities.end());
  std::vector<double> cumulative(utilities.size());
  double total = 0.0;
  for (size_t i = 0; i < utilities.size(); ++i) {
    total += std::exp(eps_prime * (utilities[i] - best));
    cumulative[i] = total;
  }
  const double target = rng.Uniform() * total;
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  if (it == cumulative.end()) --it;
  return static_cast<size_t>(it - cumulative.begin());
}

absl::StatusOr<SparseVectorResult> SparseVectorBelow(
    absl::FunctionRef<std::optional<double>(int64_t)> query, double threshold,
    double eps1, Rng& rng) {
  if (!(eps1 > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sparse vector needs eps1 > 0, got %g", eps1));
  }
  SparseVectorResult result;
  absl::StatusOr<double> threshold_noise = SampleLaplace(2.0 / eps1, rng);
  if (!threshold_noise.ok()) return threshold_noise.status();
  result.noisy_threshold = threshold - *threshold_noise;
  for (int64_t i = 0;; ++i) {
    std::optional<double> value = query(i);
    if (!value.has_value()) break;
    ++result.queries_evaluated;
    absl::StatusOr<double> noise = SampleLaplace(4.0 / eps1, rng);
    if (!noise.ok()) return noise.status();
    if (*value - *noise <= result.noisy_threshold) {
      result.index = i;
      break;
    }
  }
  return result;
}

ExponentialSampler::ExponentialSampler(std::span<const double> utilities,
                                       double eps_prime)
    : eps_prime_(eps_prime),
      utilities_(utilities.begin(), utilities.end()),
      active_(utilities.size(), true),
      num_active_(utilities.size()) {
  while (leaves_ < utilities_.size()) leaves_ <<= 1;
  sum_.assign(2 * leaves_, 0.0);
  max_.assign(2 * leaves_, kNegInf);
  for (size_t i = 0; i < utilities_.size(); ++i) {
    max_[leaves_ + i] = utilities_[i];
  }
  for (size_t i = leaves_ - 1; i >= 1; --i) {
    max_[i] = std::max(max_[2 * i], max_[2 * i + 1]);
  }
  Rebuild();
}

double ExponentialSampler::MaxUtility() const { return max_[1]; }

double ExponentialSampler::WeightOf(size_t i) const {
  if (!active_[i]) return 0.0;
  return std::exp(eps_prime_ * (utilities_[i] - reference_));
}

void ExponentialSampler::Rebuild() {
  reference_ = num_active_ > 0 ? MaxUtility() : 0.0;
  for (size_t i = 0; i < utilities_.size(); ++i) {
    sum_[leaves_ + i] = WeightOf(i);
  }
  for (size_t i = leaves_ - 1; i >= 1; --i) {
    sum_[i] = sum_[2 * i] + sum_[2 * i + 1];
  }
}

void ExponentialSampler::Refresh(size_t leaf) {
  size_t node = leaves_ + leaf;
  sum_[node] = WeightOf(leaf);
  max_[node] = active_[leaf] ? utilities_[leaf] : kNegInf;
  for (node >>= 1; node >= 1; node >>= 1) {
    sum_[node] = sum_[2 * node] + sum_[2 * node + 1];
    max_[node] = std::max(max_[2 * node], max_[2 * node + 1]);
  }
}

void ExponentialSampler::SetUtility(size_t i, double utility) {
  utilities_[i] = utility;
  Refresh(i);
}

void ExponentialSampler::Deactivate(size_t i) {
  if (!active_[i]) return;
  active_[i] = false;
  --num_active_;
  Refresh(i);
}

size_t ExponentialSampler::Sample(Rng& rng) {
  const double best = MaxUtility();
  if (best > reference_ || eps_prime_ * (reference_ - best) > kRescale) {
    Rebuild();
  }
  double target = rng.Uniform() * sum_[1];
  size_t node = 1;
  while (node < leaves_) {
    const size_t left = 2 * node;
    if (target < sum_[left] || sum_[left + 1] <= 0.0) {
      node = left;
    } else {
      target -= sum_[left];
      node = left + 1;
    }
  }
  size_t leaf = node - leaves_;
  if (leaf < utilities_.size() && active_[leaf] && sum_[node] > 0.0) {
    return leaf;
  }
  // Rounding walked off a positive-weight leaf; take the nearest one.
  for (size_t i = utilities_.size(); i-- > 0;) {
    if (active_[i] && sum_[leaves_ + i] > 0.0) return i;
  }
  for (size_t i = 0; i < utilities_.size(); ++i) {
    if (active_[i]) return i;
  }
  return 0;
}

}  // namespace privimmune
