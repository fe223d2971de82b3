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

#include "faircap/capclust.h"

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "faircap/error.h"
#include "faircap/random.h"
#include "test_util.h"

namespace faircap {
namespace {

using testing::LinePoints;

std::vector<WeightedPoint> RandomPoints(std::size_t l, long max_weight,
                                        uint64_t seed) {
  RandomStream rng(seed, "test/points");
  std::vector<WeightedPoint> points;
  for (std::size_t j = 0; j < l; ++j) {
    points.push_back({{rng.Uniform01(), rng.Uniform01()},
                      1 + static_cast<long>(rng.UniformIndex(max_weight)), j});
  }
  return points;
}

long TotalWeight(const std::vector<WeightedPoint>& points) {
  long total = 0;
  for (const auto& p : points) total += p.weight;
  return total;
}

// Clusters as sets of point indices, order-free.
std::set<std::set<std::size_t>> Partition(const std::vector<int>& delta) {
  std::vector<std::set<std::size_t>> groups;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (groups.size() <= static_cast<std::size_t>(delta[j])) {
      groups.resize(delta[j] + 1);
    }
    groups[delta[j]].insert(j);
  }
  return {groups.begin(), groups.end()};
}

void ExpectCapacitated(const std::vector<WeightedPoint>& points,
                       const FairletAssignment& a, int k, long q) {
  ASSERT_EQ(a.delta.size(), points.size());
  std::vector<long> weights(k, 0);
  for (std::size_t j = 0; j < points.size(); ++j) {
    ASSERT_GE(a.delta[j], 0);
    ASSERT_LT(a.delta[j], k);
    weights[a.delta[j]] += points[j].weight;
  }
  EXPECT_EQ(weights, a.cluster_weights);
  for (long w : weights) {
    EXPECT_GE(w, 1);
    EXPECT_LE(w, q);
  }
}

// Cost of a part with its best medoid chosen from the part.
double PartCost(const std::vector<WeightedPoint>& points,
                const std::vector<std::size_t>& part) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m : part) {
    double cost = 0.0;
    for (std::size_t j : part) {
      cost += points[j].weight *
              testing::NaiveDistance(points[j].position, points[m].position);
    }
    best = std::min(best, cost);
  }
  return best;
}

struct Optimum {
  double cost;
  std::set<std::set<std::size_t>> partition;
};

// Every 2-partition whose parts both weigh at most q.
Optimum BruteForceTwoPartition(const std::vector<WeightedPoint>& points,
                               long q) {
  const std::size_t l = points.size();
  Optimum best{std::numeric_limits<double>::infinity(), {}};
  for (unsigned mask = 1; mask + 1 < (1u << l); ++mask) {
    if (mask & 1u) continue;  // fix point 0 in the second part
    std::vector<std::size_t> a, b;
    long wa = 0, wb = 0;
    for (std::size_t j = 0; j < l; ++j) {
      if (mask & (1u << j)) {
        a.push_back(j);
        wa += points[j].weight;
      } else {
        b.push_back(j);
        wb += points[j].weight;
      }
    }
    if (wa > q || wb > q) continue;
    const double cost = PartCost(points, a) + PartCost(points, b);
    if (cost < best.cost - 1e-12) {
      best.cost = cost;
      best.partition = {{a.begin(), a.end()}, {b.begin(), b.end()}};
    }
  }
  return best;
}

std::vector<WeightedPoint> TwoBlobs(std::size_t per_blob, uint64_t seed) {
  RandomStream rng(seed, "test/blobs");
  std::vector<WeightedPoint> points;
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t i = 0; i < per_blob; ++i) {
      points.push_back({{b * 10.0 + rng.Normal(0.0, 0.5), rng.Normal(0.0, 0.5)},
                        1, points.size()});
    }
  }
  RandomStream mix(seed, "test/blobs-order");
  mix.Shuffle(points);
  return points;
}

TEST(HierarchicalTest, IdentityWhenKEqualsPointCount) {
  const auto points = LinePoints({3, 1, 2}, {});
  Trace trace;
  const auto a = HierarchicalFairCapacitated(points, 3, 1, &trace);
  EXPECT_EQ(a.delta, (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(trace.empty());
}

TEST(HierarchicalTest, TwoPairsOnLine) {
  const auto points = LinePoints({0, 1, 10, 11}, {});
  Trace trace;
  const auto a = HierarchicalFairCapacitated(points, 2, 2, &trace);
  EXPECT_EQ(a.delta, (std::vector<int>{0, 0, 1, 1}));
  ASSERT_EQ(trace.size(), 2u);
  EXPECT_EQ(trace[0].event, "merge");
  EXPECT_DOUBLE_EQ(trace[0].cost, 1.0);
}

TEST(HierarchicalTest, CapacityGateBlocksNearestMerge) {
  // Without the gate {0,1,2} would form; q = 2 forces {0,1} and {2,3}.
  const auto points = LinePoints({0, 1, 2, 3.5}, {});
  const auto a = HierarchicalFairCapacitated(points, 2, 2);
  EXPECT_EQ(a.delta, (std::vector<int>{0, 0, 1, 1}));
}

TEST(HierarchicalTest, OverweightTotalIsInfeasible) {
  const auto points = LinePoints({0, 1, 2}, {3, 3, 3});
  EXPECT_THROW(HierarchicalFairCapacitated(points, 2, 4), InfeasibleError);
}

TEST(HierarchicalTest, DeadlockIsInfeasible) {
  const auto points = LinePoints({0, 1, 2}, {2, 2, 2});
  try {
    HierarchicalFairCapacitated(points, 2, 3);
    FAIL();
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("deadlock"), std::string::npos);
  }
}

TEST(HierarchicalTest, BadArgumentsAreContractViolations) {
  const auto points = LinePoints({0, 1}, {});
  EXPECT_THROW(HierarchicalFairCapacitated(points, 0, 2), ContractViolation);
  EXPECT_THROW(HierarchicalFairCapacitated(points, 3, 2), ContractViolation);
  EXPECT_THROW(HierarchicalFairCapacitated(points, 1, 0), ContractViolation);
}

TEST(HierarchicalTest, RandomInstancesRespectCapacity) {
  RandomStream rng(3, "hier");
  int solved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t l = 10 + rng.UniformIndex(60);
    const auto points = RandomPoints(l, 3, 1000 + trial);
    const int k = 2 + static_cast<int>(rng.UniformIndex(6));
    const long q = CapacityThreshold(TotalWeight(points), k, 1.2);
    try {
      const auto a = HierarchicalFairCapacitated(points, k, q);
      ExpectCapacitated(points, a, k, q);
      ++solved;
    } catch (const InfeasibleError&) {
    }
  }
  EXPECT_GT(solved, 80);
}

TEST(HierarchicalTest, MergeOrderInvariantUnderPermutation) {
  for (int trial = 0; trial < 30; ++trial) {
    const auto points = RandomPoints(25, 2, 2000 + trial);
    const int k = 4;
    const long q = CapacityThreshold(TotalWeight(points), k, 1.2);
    Trace trace;
    FairletAssignment base;
    try {
      base = HierarchicalFairCapacitated(points, k, q, &trace);
    } catch (const InfeasibleError&) {
      continue;
    }
    std::vector<std::size_t> perm(points.size());
    for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
    RandomStream rng(trial, "perm");
    rng.Shuffle(perm);
    std::vector<WeightedPoint> shuffled;
    for (std::size_t j : perm) shuffled.push_back(points[j]);
    Trace shuffled_trace;
    const auto other =
        HierarchicalFairCapacitated(shuffled, k, q, &shuffled_trace);
    std::vector<int> mapped(points.size());
    for (std::size_t j = 0; j < perm.size(); ++j) {
      mapped[perm[j]] = other.delta[j];
    }
    EXPECT_EQ(Partition(mapped), Partition(base.delta));
    ASSERT_EQ(trace.size(), shuffled_trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
      EXPECT_NEAR(trace[i].cost, shuffled_trace[i].cost, 1e-12);
    }
  }
}

TEST(KMedoidsTest, IdentityWhenKEqualsPointCount) {
  const auto points = LinePoints({0, 4, 9}, {2, 1, 3});
  const auto a = KMedoidsFairCapacitated(points, 3, 3, 0.3, 1);
  EXPECT_EQ(Partition(a.delta).size(), 3u);
  EXPECT_DOUBLE_EQ(WeightedMedoidCost(points, a), 0.0);
}

TEST(KMedoidsTest, RecoversSeparatedTriples) {
  const auto points = LinePoints({0, 0.5, 1, 20, 20.5, 21}, {});
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = KMedoidsFairCapacitated(points, 2, 3, 0.3, seed);
    EXPECT_EQ(Partition(a.delta),
              (std::set<std::set<std::size_t>>{{0, 1, 2}, {3, 4, 5}}));
    EXPECT_DOUBLE_EQ(WeightedMedoidCost(points, a), 2.0);
  }
}

TEST(KMedoidsTest, InfeasibleTotalWeight) {
  const auto points = LinePoints({0, 1, 2}, {2, 2, 2});
  EXPECT_THROW(KMedoidsFairCapacitated(points, 2, 2, 0.3, 0), InfeasibleError);
  EXPECT_THROW(KMedoidsFairCapacitated(points, 2, 3, 0.0, 0),
               ContractViolation);
}

TEST(KMedoidsTest, TraceIsNonIncreasingAndCapacityHolds) {
  RandomStream rng(4, "kmed");
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t l = 10 + rng.UniformIndex(40);
    const auto points = RandomPoints(l, 3, 3000 + trial);
    const int k = 2 + static_cast<int>(rng.UniformIndex(5));
    const long q = CapacityThreshold(TotalWeight(points), k, 1.2);
    Trace trace;
    try {
      const auto a = KMedoidsFairCapacitated(points, k, q, 0.3, trial, &trace);
      ExpectCapacitated(points, a, k, q);
      ASSERT_FALSE(trace.empty());
      EXPECT_EQ(trace.front().event, "assign");
      for (std::size_t i = 1; i < trace.size(); ++i) {
        EXPECT_LT(trace[i].cost, trace[i - 1].cost);
      }
      EXPECT_NEAR(trace.back().cost, WeightedMedoidCost(points, a), 1e-9);
      EXPECT_LE(trace.size(), 10 * l + 1);
      // Medoids sit in their own clusters, ascending.
      for (int c = 0; c < k; ++c) EXPECT_EQ(a.delta[a.medoids[c]], c);
      EXPECT_TRUE(std::is_sorted(a.medoids.begin(), a.medoids.end()));
      ++solved;
    } catch (const InfeasibleError&) {
    }
  }
  EXPECT_GT(solved, 50);
}

TEST(KMedoidsTest, DeterministicForSeed) {
  const auto points = RandomPoints(40, 2, 5);
  const long q = CapacityThreshold(TotalWeight(points), 4, 1.2);
  const auto a = KMedoidsFairCapacitated(points, 4, q, 0.3, 9);
  const auto b = KMedoidsFairCapacitated(points, 4, q, 0.3, 9);
  EXPECT_EQ(a.delta, b.delta);
  EXPECT_EQ(a.medoids, b.medoids);
}

TEST(SmallInstanceTest, BothAlgorithmsMatchBruteForce) {
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t per_blob = 2 + trial % 5;  // 4 to 12 points
    const auto points = TwoBlobs(per_blob, 4000 + trial);
    const long q = static_cast<long>(points.size() / 2);
    const Optimum oracle = BruteForceTwoPartition(points, q);
    const auto kmed = KMedoidsFairCapacitated(points, 2, q, 0.3, trial);
    EXPECT_EQ(Partition(kmed.delta), oracle.partition);
    EXPECT_NEAR(WeightedMedoidCost(points, kmed), oracle.cost, 1e-9);
    const auto hier = HierarchicalFairCapacitated(points, 2, q);
    EXPECT_EQ(Partition(hier.delta), oracle.partition);
  }
}

TEST(TraceTest, JsonLines) {
  const Trace trace = {{0, "assign", 2.5}, {1, "swap", 1.0}};
  EXPECT_EQ(TraceToJsonLines(trace),
            "{\"cost\":2.5,\"event\":\"assign\",\"iteration\":0}\n"
            "{\"cost\":1.0,\"event\":\"swap\",\"iteration\":1}\n");
}

}  // namespace
}  // namespace faircap
