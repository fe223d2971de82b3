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

#ifndef FAIRCAP_BASELINES_H_
#define FAIRCAP_BASELINES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faircap/capclust.h"
#include "faircap/core.h"
#include "faircap/metrics.h"

namespace faircap {

// PAM on raw rows: seeded initial medoids, nearest-medoid assignment,
// best-improvement swaps until no swap lowers the cost. The returned
// clustering's representatives are recomputed cluster medoids.
Clustering KMedoidsVanilla(const Dataset& data, int k, uint64_t seed,
                           Trace* trace = nullptr);

struct KCenterResult {
  FairletAssignment assignment;  // medoids holds the centers, in pick order
  double radius = 0.0;
};

// Gonzalez farthest-first traversal over unweighted points. The first center
// is drawn from the seed; later centers are the point farthest from its
// nearest center (ties: lowest index). Points join their nearest center.
KCenterResult KCenterGreedy(std::span<const WeightedPoint> points, int k,
                            uint64_t seed);

enum class Method {
  kVanillaKMedoids,
  kVanillaFairletKCenter,
  kMcfFairletKCenter,
  kHierFairCapVanilla,
  kHierFairCapMcf,
  kKMedFairCapVanilla,
  kKMedFairCapMcf,
};

const char* MethodName(Method method);
std::optional<Method> ParseMethod(const std::string& name);
std::vector<Method> AllMethods();

bool UsesFairlets(Method method);
bool IsFairCapacitated(Method method);
bool IsHierarchical(Method method);

struct PipelineResult {
  Clustering clustering;
  RunRecord record;
};

// Decomposition (if any), clustering, composition and evaluation. q is
// ceil(n * params.epsilon / k). Errors from any stage propagate.
PipelineResult RunPipeline(Method method, const Dataset& data,
                           const Params& params, Trace* trace = nullptr);

}  // namespace faircap

#endif  // FAIRCAP_BASELINES_H_
