// Copyright 2026 The Faircap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "faircap/capclust.h"
#include "faircap/error.h"
#include "faircap/random.h"

namespace faircap {
namespace {

struct Best {
  double value = -1.0;
  long weight = 0;
  std::vector<std::size_t> items;
};

// Exhaustive 2^n search applying the documented tie-break: larger value,
// then smaller weight, then lexicographically smaller index list.
Best BruteForce(const KnapsackInstance& inst, double tolerance) {
  const std::size_t n = inst.values.size();
  Best best;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    double value = 0.0;
    long weight = 0;
    std::vector<std::size_t> items;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ul << i)) {
        value += inst.values[i];
        weight += inst.weights[i];
        items.push_back(i);
      }
    }
    if (weight > inst.capacity) continue;
    bool better;
    if (value > best.value + tolerance) {
      better = true;
    } else if (value < best.value - tolerance) {
      better = false;
    } else if (weight != best.weight) {
      better = weight < best.weight;
    } else {
      better = items < best.items;
    }
    if (better) best = {value, weight, items};
  }
  return best;
}

double ValueOf(const KnapsackInstance& inst,
               const std::vector<std::size_t>& items) {
  double v = 0.0;
  for (std::size_t i : items) v += inst.values[i];
  return v;
}

long WeightOf(const KnapsackInstance& inst,
              const std::vector<std::size_t>& items) {
  long w = 0;
  for (std::size_t i : items) w += inst.weights[i];
  return w;
}

TEST(KnapsackTest, ZeroCapacityIsEmpty) {
  EXPECT_TRUE(KnapsackSelect({{1.0, 2.0}, {1, 1}, 0}).empty());
}

TEST(KnapsackTest, SmallExample) {
  const KnapsackInstance inst{{3.0, 4.0, 5.0}, {2, 3, 4}, 6};
  const auto items = KnapsackSelect(inst);
  // {0, 2} fills the capacity exactly and beats {0, 1} (value 7).
  EXPECT_EQ(items, (std::vector<std::size_t>{0, 2}));
  EXPECT_DOUBLE_EQ(ValueOf(inst, items), 8.0);
  EXPECT_EQ(items, BruteForce(inst, 0.0).items);
}

TEST(KnapsackTest, NoItems) {
  EXPECT_TRUE(KnapsackSelect({{}, {}, 5}).empty());
}

TEST(KnapsackTest, MismatchedLengthsAreContractViolation) {
  EXPECT_THROW(KnapsackSelect({{1.0}, {1, 2}, 3}), ContractViolation);
  EXPECT_THROW(KnapsackSelect({{1.0}, {0}, 3}), ContractViolation);
  EXPECT_THROW(KnapsackSelect({{-1.0}, {1}, 3}), ContractViolation);
}

TEST(KnapsackTest, TieBreaksOnWeightThenIndices) {
  // {0} and {1, 2} both give 4; {0} is lighter.
  EXPECT_EQ(KnapsackSelect({{4.0, 2.0, 2.0}, {3, 2, 2}, 4}),
            (std::vector<std::size_t>{0}));
  // Equal value and weight: the lexicographically smallest set wins.
  EXPECT_EQ(KnapsackSelect({{1.0, 1.0, 1.0, 1.0}, {1, 1, 1, 1}, 2}),
            (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(KnapsackSelect({{2.0, 1.0, 1.0, 0.0}, {2, 1, 1, 5}, 2}),
            (std::vector<std::size_t>{0}));
}

TEST(KnapsackTest, MatchesExhaustiveEnumeration) {
  RandomStream rng(1, "knapsack");
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.UniformIndex(14);
    KnapsackInstance inst;
    for (std::size_t i = 0; i < n; ++i) {
      inst.values.push_back(rng.Uniform01() * 10.0);
      inst.weights.push_back(1 + static_cast<long>(rng.UniformIndex(6)));
    }
    inst.capacity = static_cast<long>(rng.UniformIndex(20));
    const auto items = KnapsackSelect(inst);
    const Best oracle = BruteForce(inst, 0.0);
    EXPECT_LE(WeightOf(inst, items), inst.capacity);
    EXPECT_NEAR(ValueOf(inst, items), oracle.value, 1e-9);
    EXPECT_TRUE(std::is_sorted(items.begin(), items.end()));
  }
}

TEST(KnapsackTest, IntegerValuedTiesMatchOracleSelection) {
  RandomStream rng(2, "knapsack-ties");
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.UniformIndex(10);
    KnapsackInstance inst;
    for (std::size_t i = 0; i < n; ++i) {
      inst.values.push_back(static_cast<double>(rng.UniformIndex(4)));
      inst.weights.push_back(1 + static_cast<long>(rng.UniformIndex(3)));
    }
    inst.capacity = static_cast<long>(rng.UniformIndex(10));
    EXPECT_EQ(KnapsackSelect(inst), BruteForce(inst, 1e-9).items);
  }
}

TEST(DecayValueTest, Examples) {
  EXPECT_DOUBLE_EQ(DecayValue(0.0, 0.3), 1.0);
  EXPECT_NEAR(DecayValue(0.3, 0.3), 0.36788, 5e-6);
  EXPECT_DOUBLE_EQ(DecayValue(0.3, 0.3), std::exp(-1.0));
}

TEST(DecayValueTest, StrictlyDecreasingTowardZero) {
  double previous = DecayValue(0.0, 0.3);
  for (double d = 0.05; d < 20.0; d += 0.05) {
    const double v = DecayValue(d, 0.3);
    EXPECT_LT(v, previous);
    EXPECT_GE(v, 0.0);
    previous = v;
  }
  EXPECT_LT(previous, 1e-20);
}

TEST(CapacityThresholdTest, Examples) {
  EXPECT_EQ(CapacityThreshold(395, 10, 1.2), 48);
  EXPECT_EQ(CapacityThreshold(100, 10, 1.0), 10);
  EXPECT_EQ(CapacityThreshold(4000, 7, 1.01), 578);
}

TEST(CapacityThresholdTest, CoversEveryPoint) {
  for (long n = 1; n < 200; n += 7) {
    for (long k = 1; k <= n && k < 20; ++k) {
      for (double eps : {1.0, 1.01, 1.2, 1.5}) {
        const long q = CapacityThreshold(n, k, eps);
        EXPECT_GE(k * q, n);
        EXPECT_GE(static_cast<double>(q), n * eps / k - 1e-9);
        EXPECT_LT(static_cast<double>(q - 1), n * eps / k);
      }
    }
  }
}

}  // namespace
}  // namespace faircap
