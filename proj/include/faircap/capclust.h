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

#ifndef FAIRCAP_CAPCLUST_H_
#define FAIRCAP_CAPCLUST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "faircap/core.h"

namespace faircap {

// A fairlet seen by the clustering stage: its center's features and its
// cardinality.
struct WeightedPoint {
  std::vector<double> position;
  long weight = 1;
  std::size_t fairlet_index = 0;
};

std::vector<WeightedPoint> MakeWeightedPoints(
    const FairletDecomposition& decomposition, const Dataset& data);

// Maximum cluster cardinality q = ceil(n * epsilon / k).
long CapacityThreshold(long n, long k, double epsilon);

struct CapacityBudget {
  long q;
  double epsilon;
  long k;
  long n;

  static CapacityBudget Make(long n, long k, double epsilon) {
    return {CapacityThreshold(n, k, epsilon), epsilon, k, n};
  }
};

struct KnapsackInstance {
  std::vector<double> values;  // >= 0
  std::vector<long> weights;   // >= 1
  long capacity = 0;           // >= 0
};

// Exact 0-1 knapsack by dynamic programming over integer weights. Among
// optimal selections, the one with the smallest total weight wins, then the
// lexicographically smallest index set. Returned indices are ascending.
std::vector<std::size_t> KnapsackSelect(const KnapsackInstance& instance);

// Attractiveness of a point at distance d from a medoid: exp(-d / lambda).
double DecayValue(double distance, double lambda);

struct TraceEvent {
  int iteration;
  std::string event;  // "merge", "assign" or "swap"
  double cost;
};
using Trace = std::vector<TraceEvent>;

// One JSON object per line: {"iteration":..,"event":..,"cost":..}.
std::string TraceToJsonLines(const Trace& trace);

// Result of clustering weighted points (fairlets) into k groups.
struct FairletAssignment {
  int k = 0;
  std::vector<int> delta;             // point -> cluster id in [0, k)
  std::vector<std::size_t> medoids;   // point index per cluster; k-medoids only
  std::vector<long> cluster_weights;  // total weight per cluster
};

// Weighted k-medoids objective: sum_j w_j * d(point_j, medoid of its cluster).
double WeightedMedoidCost(std::span<const WeightedPoint> points,
                          const FairletAssignment& assignment);

// Agglomerative clustering with centroid linkage where a merge is only
// allowed if the merged weight stays within q. Clusters are numbered by their
// smallest member index.
//
// Throws InfeasibleError when sum(w) > k * q, some weight exceeds q, or the
// merging deadlocks (more than k clusters left, no pair fits in q).
FairletAssignment HierarchicalFairCapacitated(
    std::span<const WeightedPoint> points, int k, long q,
    Trace* trace = nullptr);

// k-medoids whose assignment step fills each medoid's cluster by a 0-1
// knapsack over the unassigned points (value exp(-d/lambda), weight w, room
// q), followed by best-improvement medoid swaps until no swap lowers the
// weighted cost. Cluster c is the c-th smallest medoid index. Initial medoids
// are a seeded sample, redrawn (up to 50 times) while the assignment strands
// a fairlet; InfeasibleError when every sample does.
FairletAssignment KMedoidsFairCapacitated(std::span<const WeightedPoint> points,
                                          int k, long q, double lambda,
                                          uint64_t seed,
                                          Trace* trace = nullptr);

}  // namespace faircap

#endif  // FAIRCAP_CAPCLUST_H_
