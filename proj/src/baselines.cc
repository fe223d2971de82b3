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

#include "faircap/baselines.h"

#include <algorithm>
#include <chrono>
#include <limits>

#include "faircap/error.h"
#include "faircap/fairlets.h"
#include "faircap/random.h"

namespace faircap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Nearest {
  std::vector<int> slot;        // nearest medoid slot per row
  std::vector<double> first;    // distance to it
  std::vector<double> second;   // distance to the runner-up
};

Nearest ComputeNearest(const Dataset& data,
                       const std::vector<std::size_t>& medoids) {
  const std::size_t n = data.size();
  Nearest out{std::vector<int>(n, -1), std::vector<double>(n, kInf),
              std::vector<double>(n, kInf)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t s = 0; s < medoids.size(); ++s) {
      // A medoid always belongs to its own slot, even with duplicate points.
      const double d = medoids[s] == j ? -1.0 : RowDistance(data, j, medoids[s]);
      if (d < out.first[j]) {
        out.second[j] = out.first[j];
        out.first[j] = d;
        out.slot[j] = static_cast<int>(s);
      } else if (d < out.second[j]) {
        out.second[j] = d;
      }
    }
    out.first[j] = std::max(out.first[j], 0.0);
  }
  return out;
}

double TotalCost(const Nearest& nearest) {
  double cost = 0.0;
  for (double d : nearest.first) cost += d;
  return cost;
}

}  // namespace

Clustering KMedoidsVanilla(const Dataset& data, int k, uint64_t seed,
                           Trace* trace) {
  const std::size_t n = data.size();
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (n < static_cast<std::size_t>(k)) {
    throw ContractViolation("k-medoids needs n >= k (n = " +
                            std::to_string(n) + ", k = " + std::to_string(k) +
                            ")");
  }
  RandomStream stream(seed, "baselines/pam-init");
  std::vector<std::size_t> medoids = stream.SampleWithoutReplacement(n, k);
  std::sort(medoids.begin(), medoids.end());

  Nearest nearest = ComputeNearest(data, medoids);
  double cost = TotalCost(nearest);
  int iteration = 0;
  if (trace) trace->push_back({iteration, "assign", cost});

  std::vector<bool> is_medoid(n);
  std::vector<double> to_candidate(n);
  for (;;) {
    std::fill(is_medoid.begin(), is_medoid.end(), false);
    for (std::size_t s : medoids) is_medoid[s] = true;
    double best_cost = cost;
    std::size_t best_slot = 0;
    std::size_t best_point = n;
    for (std::size_t o = 0; o < n; ++o) {
      if (is_medoid[o]) continue;
      for (std::size_t j = 0; j < n; ++j) to_candidate[j] = RowDistance(data, j, o);
      for (std::size_t s = 0; s < medoids.size(); ++s) {
        double trial = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double keep = nearest.slot[j] == static_cast<int>(s)
                                  ? nearest.second[j]
                                  : nearest.first[j];
          trial += std::min(keep, to_candidate[j]);
        }
        if (trial < best_cost) {
          best_cost = trial;
          best_slot = s;
          best_point = o;
        }
      }
    }
    if (best_point == n) break;
    medoids[best_slot] = best_point;
    std::sort(medoids.begin(), medoids.end());
    nearest = ComputeNearest(data, medoids);
    // Recomputed rather than taking best_cost, so rounding in the
    // incremental estimate cannot make the trace look non-monotone.
    const double recomputed = TotalCost(nearest);
    if (!(recomputed < cost)) break;
    cost = recomputed;
    if (trace) trace->push_back({++iteration, "swap", cost});
  }

  std::vector<int> assignment(nearest.slot.begin(), nearest.slot.end());
  return Clustering::FromAssignment(std::move(assignment), k, data);
}

KCenterResult KCenterGreedy(std::span<const WeightedPoint> points, int k,
                            uint64_t seed) {
  const std::size_t l = points.size();
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (l < static_cast<std::size_t>(k)) {
    throw ContractViolation("k-center needs at least k points");
  }
  RandomStream stream(seed, "baselines/kcenter");
  KCenterResult result;
  auto& centers = result.assignment.medoids;
  centers.push_back(stream.UniformIndex(l));

  std::vector<double> gap(l, kInf);
  std::vector<int> owner(l, 0);
  auto absorb = [&](std::size_t center, int slot) {
    for (std::size_t j = 0; j < l; ++j) {
      const double d = j == center ? -1.0
                                   : Distance(points[j].position,
                                              points[center].position);
      if (d < gap[j]) {
        gap[j] = d;
        owner[j] = slot;
      }
    }
  };
  absorb(centers[0], 0);
  while (centers.size() < static_cast<std::size_t>(k)) {
    std::size_t far = 0;
    for (std::size_t j = 1; j < l; ++j) {
      if (gap[j] > gap[far]) far = j;
    }
    centers.push_back(far);
    absorb(far, static_cast<int>(centers.size() - 1));
  }

  result.assignment.k = k;
  result.assignment.delta = owner;
  result.assignment.cluster_weights.assign(k, 0);
  for (std::size_t j = 0; j < l; ++j) {
    result.assignment.cluster_weights[owner[j]] += points[j].weight;
    result.radius = std::max(result.radius, std::max(gap[j], 0.0));
  }
  return result;
}

const char* MethodName(Method method) {
  switch (method) {
    case Method::kVanillaKMedoids:
      return "vanilla_kmedoids";
    case Method::kVanillaFairletKCenter:
      return "vanilla_fairlet_kcenter";
    case Method::kMcfFairletKCenter:
      return "mcf_fairlet_kcenter";
    case Method::kHierFairCapVanilla:
      return "hier_fair_cap_vanilla";
    case Method::kHierFairCapMcf:
      return "hier_fair_cap_mcf";
    case Method::kKMedFairCapVanilla:
      return "kmed_fair_cap_vanilla";
    case Method::kKMedFairCapMcf:
      return "kmed_fair_cap_mcf";
  }
  return "unknown";
}

std::vector<Method> AllMethods() {
  return {Method::kVanillaKMedoids,    Method::kVanillaFairletKCenter,
          Method::kMcfFairletKCenter,  Method::kHierFairCapVanilla,
          Method::kHierFairCapMcf,     Method::kKMedFairCapVanilla,
          Method::kKMedFairCapMcf};
}

std::optional<Method> ParseMethod(const std::string& name) {
  for (Method m : AllMethods()) {
    if (name == MethodName(m)) return m;
  }
  return std::nullopt;
}

bool UsesFairlets(Method method) { return method != Method::kVanillaKMedoids; }

bool IsFairCapacitated(Method method) {
  return method == Method::kHierFairCapVanilla ||
         method == Method::kHierFairCapMcf ||
         method == Method::kKMedFairCapVanilla ||
         method == Method::kKMedFairCapMcf;
}

bool IsHierarchical(Method method) {
  return method == Method::kHierFairCapVanilla ||
         method == Method::kHierFairCapMcf;
}

PipelineResult RunPipeline(Method method, const Dataset& data,
                           const Params& params, Trace* trace) {
  const auto start = std::chrono::steady_clock::now();
  const int k = params.k;
  const long q =
      CapacityThreshold(static_cast<long>(data.size()), k, params.epsilon);

  auto finish = [&](Clustering clustering) {
    RunRecord record = Evaluate(clustering, data, params, MethodName(method));
    record.wall_time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return PipelineResult{std::move(clustering), std::move(record)};
  };

  if (method == Method::kVanillaKMedoids) {
    return finish(KMedoidsVanilla(data, k, params.seed, trace));
  }

  const bool mcf = method == Method::kMcfFairletKCenter ||
                   method == Method::kHierFairCapMcf ||
                   method == Method::kKMedFairCapMcf;
  const FairletDecomposition decomposition =
      mcf ? McfDecompose(data, params.t, params.seed)
          : VanillaDecompose(data, params.t, params.seed);
  const std::vector<WeightedPoint> points =
      MakeWeightedPoints(decomposition, data);

  FairletAssignment assignment;
  switch (method) {
    case Method::kVanillaFairletKCenter:
    case Method::kMcfFairletKCenter:
      if (points.size() < static_cast<std::size_t>(k)) {
        throw ContractViolation("k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(points.size()) + " fairlets");
      }
      assignment = KCenterGreedy(points, k, params.seed).assignment;
      break;
    case Method::kHierFairCapVanilla:
    case Method::kHierFairCapMcf:
      assignment = HierarchicalFairCapacitated(points, k, q, trace);
      break;
    default:
      assignment = KMedoidsFairCapacitated(points, k, q, params.lambda,
                                           params.seed, trace);
      break;
  }
  return finish(ComposeAssignment(assignment.delta, decomposition, data, k));
}

}  // namespace faircap
