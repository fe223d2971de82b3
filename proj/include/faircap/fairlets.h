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

#ifndef FAIRCAP_FAIRLETS_H_
#define FAIRCAP_FAIRLETS_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "faircap/core.h"

namespace faircap {

// How a fairlet's center is chosen once its members are fixed.
enum class CenterPolicy {
  kRandom,  // uniform member from the seeded stream
  kMedoid,  // member with the smallest summed distance to the others
};

// Cost-agnostic decomposition. The minority group is "blue"; each blue point
// opens one fairlet and takes a contiguous block of a seed-shuffled list of
// the majority points, block sizes floor(r/b) or ceil(r/b).
//
// Throws InfeasibleError when the dataset balance is below t and
// UnsupportedError when t is not of the form 1/m.
FairletDecomposition VanillaDecompose(const Dataset& data,
                                      const ThresholdFM& t, uint64_t seed,
                                      CenterPolicy centers = CenterPolicy::kRandom);

// Cost-aware decomposition from a min-cost flow over a bipartite
// minority -> majority network. Each minority point receives between 1 and m
// majority points; arc costs are pairwise distances. The returned
// decomposition never costs more (FairletCost) than VanillaDecompose on the
// same data, threshold, seed and center policy.
FairletDecomposition McfDecompose(const Dataset& data, const ThresholdFM& t,
                                  uint64_t seed,
                                  CenterPolicy centers = CenterPolicy::kRandom);

// Sum over fairlets of member-to-center distances.
double FairletCost(const FairletDecomposition& decomposition,
                   const Dataset& data);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the partition property, gamma consistency, centers, the size bound
// |F| <= f + m and per-fairlet balance >= t. Never throws for malformed
// decompositions; every problem becomes a report line.
ValidationReport Validate(const FairletDecomposition& decomposition,
                          const Dataset& data, const ThresholdFM& t);

// [{fairlet_id, center_row_id, member_row_ids}, ...]
nlohmann::json DecompositionToJson(const FairletDecomposition& decomposition,
                                   const Dataset& data);

// Inverse of DecompositionToJson. Unknown row ids raise DataError. The result
// is not validated; gamma is left at data.size() for rows no fairlet claims.
FairletDecomposition DecompositionFromJson(const nlohmann::json& json,
                                           const Dataset& data,
                                           const ThresholdFM& t);

}  // namespace faircap

#endif  // FAIRCAP_FAIRLETS_H_
