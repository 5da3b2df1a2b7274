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

#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"

namespace privimmune {
namespace {

constexpr int kDraws = 100000;

TEST(PrivacyBudgetTest, Validation) {
  EXPECT_TRUE(PrivacyBudget::Create(1.0, 0.01).ok());
  EXPECT_TRUE(PrivacyBudget::Create(1.0, 0.01, 0.5).ok());
  EXPECT_FALSE(PrivacyBudget::Create(0.0, 0.01).ok());
  EXPECT_FALSE(PrivacyBudget::Create(-1.0, 0.01).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0, 0.0).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0, 1.0).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0, 0.5, -0.1).ok());
  EXPECT_FALSE(PrivacyBudget::Create(INFINITY, 0.5).ok());
}

TEST(RngTest, SameSeedReplays) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.Uniform();
    EXPECT_EQ(x, b.Uniform());
    differs |= x != c.Uniform();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, SplitSeedIsDeterministicAndSpreads) {
  EXPECT_EQ(SplitSeed(7, 3), SplitSeed(7, 3));
  EXPECT_NE(SplitSeed(7, 3), SplitSeed(7, 4));
  EXPECT_NE(SplitSeed(7, 3), SplitSeed(8, 3));
}

TEST(RngTest, UniformIntStaysInRange) {
  Rng rng(1);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) ++hist[rng.UniformInt(7)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}

TEST(LaplaceTest, RejectsNonPositiveScale) {
  Rng rng(1);
  EXPECT_FALSE(SampleLaplace(0.0, rng).ok());
  EXPECT_FALSE(SampleLaplace(-2.0, rng).ok());
}

TEST(LaplaceTest, SameSeedSameDraw) {
  Rng a(9), b(9);
  EXPECT_EQ(*SampleLaplace(1.0, a), *SampleLaplace(1.0, b));
}

TEST(LaplaceTest, MomentsAndSymmetry) {
  Rng rng(2024);
  double sum = 0.0, sum_sq = 0.0;
  int negative = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = *SampleLaplace(1.0, rng);
    sum += x;
    sum_sq += x * x;
    negative += x < 0.0;
  }
  const double mean = sum / kDraws;
  const double var = sum_sq / kDraws - mean * mean;
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 2.0, 0.1);
  EXPECT_NEAR(static_cast<double>(negative) / kDraws, 0.5, 0.01);
}

TEST(ExponentialChoiceTest, EmptyIsAnError) {
  Rng rng(1);
  EXPECT_FALSE(ExponentialChoice({}, 1.0, rng).ok());
}

TEST(ExponentialChoiceTest, SingleCandidate) {
  Rng rng(1);
  const double u[] = {3.0};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(*ExponentialChoice(u, 2.0, rng), 0u);
}

TEST(ExponentialChoiceTest, EqualUtilitiesAreFair) {
  Rng rng(3);
  const double u[] = {0.5, 0.5};
  int first = 0;
  for (int i = 0; i < kDraws; ++i)
    first += *ExponentialChoice(u, 1.0, rng) == 0;
  EXPECT_NEAR(static_cast<double>(first) / kDraws, 0.5, 0.01);
}

TEST(ExponentialChoiceTest, SoftmaxAtLogThree) {
  Rng rng(4);
  const double u[] = {1.0, 0.0};
  int first = 0;
  for (int i = 0; i < kDraws; ++i) {
    first += *ExponentialChoice(u, std::log(3.0), rng) == 0;
  }
  EXPECT_NEAR(static_cast<double>(first) / kDraws, 0.75, 0.01);
}

TEST(ExponentialChoiceTest, FrequenciesWithinThreeStandardErrors) {
  Rng rng(5);
  const double u[] = {0.0, 1.0, 2.5, -1.0, 1.7};
  const double eps = 0.8;
  std::vector<double> w(5);
  for (int i = 0; i < 5; ++i) w[i] = std::exp(eps * u[i]);
  const double z = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<int> hist(5, 0);
  for (int i = 0; i < kDraws; ++i) ++hist[*ExponentialChoice(u, eps, rng)];
  for (int i = 0; i < 5; ++i) {
    const double p = w[i] / z;
    const double se = std::sqrt(p * (1 - p) / kDraws);
    EXPECT_NEAR(static_cast<double>(hist[i]) / kDraws, p, 3 * se) << i;
  }
}

TEST(ExponentialChoiceTest, HugeUtilitiesDoNotOverflow) {
  Rng rng(6);
  const double u[] = {1e6, 1e6 + 1.0};
  int second = 0;
  for (int i = 0; i < 20000; ++i) {
    second += *ExponentialChoice(u, std::log(3.0), rng) == 1;
  }
  EXPECT_NEAR(second / 20000.0, 0.75, 0.02);
}

TEST(SparseVectorTest, LowQueriesStopImmediately) {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    SparseVectorResult r = *SparseVectorBelow(
        [](int64_t) -> std::optional<double> { return -1e6; }, 0.0, 1.0, rng);
    ASSERT_TRUE(r.index.has_value());
    EXPECT_EQ(*r.index, 0);
  }
}

TEST(SparseVectorTest, HighQueriesExhaust) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    SparseVectorResult r = *SparseVectorBelow(
        [](int64_t i) -> std::optional<double> {
          if (i >= 100) return std::nullopt;
          return 1e6;
        },
        0.0, 1.0, rng);
    EXPECT_FALSE(r.index.has_value());
    EXPECT_EQ(r.queries_evaluated, 100);
  }
}

TEST(SparseVectorTest, FindsTheDip) {
  Rng rng(9);
  const double q[] = {10, 10, -10, 10};
  int hits = 0;
  constexpr int kTrials = 10000;
  for (int t = 0; t < kTrials; ++t) {
    SparseVectorResult r = *SparseVectorBelow(
        [&](int64_t i) -> std::optional<double> {
          if (i >= 4) return std::nullopt;
          return q[i];
        },
        0.0, 2.0, rng);
    hits += r.index == 2;
  }
  EXPECT_GE(static_cast<double>(hits) / kTrials, 0.95);
}

TEST(SparseVectorTest, LargeBudgetActsAsFirstCrossing) {
  Rng rng(10);
  const double q[] = {5, 3, 1, 0.5, -2, -3};
  for (int t = 0; t < 200; ++t) {
    SparseVectorResult r = *SparseVectorBelow(
        [&](int64_t i) -> std::optional<double> {
          if (i >= 6) return std::nullopt;
          return q[i];
        },
        0.75, 1e7, rng);
    EXPECT_EQ(r.index, 3);
  }
}

TEST(SparseVectorTest, RejectsNonPositiveBudget) {
  Rng rng(1);
  EXPECT_FALSE(
      SparseVectorBelow([](int64_t) -> std::optional<double> { return 0.0; },
                        0.0, 0.0, rng)
          .ok());
}

TEST(ExponentialSamplerTest, MatchesSoftmaxWithoutReplacement) {
  const double u[] = {0.0, 2.0, 1.0};
  const double eps = 0.7;
  // Probability that index 1 is drawn second given index 0 went first.
  const double w1 = std::exp(eps * 2.0), w2 = std::exp(eps * 1.0);
  const double want = w1 / (w1 + w2);
  Rng rng(11);
  int hits = 0, trials = 0;
  for (int t = 0; t < 60000; ++t) {
    ExponentialSampler s(u, eps);
    const size_t first = s.Sample(rng);
    s.Deactivate(first);
    if (first != 0) continue;
    ++trials;
    hits += s.Sample(rng) == 1;
  }
  const double se = std::sqrt(want * (1 - want) / trials);
  EXPECT_NEAR(static_cast<double>(hits) / trials, want, 3 * se);
}

TEST(ExponentialSamplerTest, UtilityUpdatesAndReanchoring) {
  std::vector<double> u = {500.0, 400.0, 0.0, 0.0};
  ExponentialSampler s(u, 1.0);
  EXPECT_EQ(s.MaxUtility(), 500.0);
  s.Deactivate(0);
  s.Deactivate(1);
  EXPECT_EQ(s.MaxUtility(), 0.0);
  s.SetUtility(3, std::log(3.0));
  Rng rng(12);
  int three = 0;
  for (int t = 0; t < 40000; ++t) three += s.Sample(rng) == 3;
  EXPECT_NEAR(three / 40000.0, 0.75, 0.01);
  EXPECT_EQ(s.num_active(), 2u);
}

}  // namespace
}  // namespace privimmune
