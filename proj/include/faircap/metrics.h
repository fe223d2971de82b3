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

#ifndef FAIRCAP_METRICS_H_
#define FAIRCAP_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "faircap/core.h"

namespace faircap {

// One (method, k) evaluation. Failed runs keep method/k/q/t/seed, carry a
// non-"ok" status and leave the measured fields empty.
struct RunRecord {
  std::string method;
  int k = 0;
  double cost = 0.0;
  BalanceRatio balance;
  std::vector<std::size_t> sizes;  // descending
  long q = 0;
  ThresholdFM t = ThresholdFM::Make(1, 2);
  uint64_t seed = 0;
  double wall_time_ms = 0.0;
  std::string status = "ok";  // ok | infeasible | error
  std::string message;

  bool ok() const { return status == "ok"; }
  std::size_t max_size() const { return sizes.empty() ? 0 : sizes.front(); }
};

// Cost uses the clustering's representatives; q is ceil(n * epsilon / k)
// from params.
RunRecord Evaluate(const Clustering& clustering, const Dataset& data,
                   const Params& params, const std::string& method);

struct FiveNumberSummary {
  double min;
  double q1;
  double median;
  double q3;
  double max;
};

// Quartiles by linear interpolation between order statistics (inclusive):
// position p * (n - 1) in the sorted list.
FiveNumberSummary SizeDispersion(std::span<const std::size_t> sizes);

// Timing is left out unless asked for, so serialized sweeps are
// reproducible byte for byte.
nlohmann::json RecordToJson(const RunRecord& record,
                            bool include_timing = false);
RunRecord RecordFromJson(const nlohmann::json& json);

std::string RecordsToCsv(std::span<const RunRecord> records);

}  // namespace faircap

#endif  // FAIRCAP_METRICS_H_
