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

#include "faircap/metrics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "faircap/capclust.h"
#include "faircap/error.h"

namespace faircap {

RunRecord Evaluate(const Clustering& clustering, const Dataset& data,
                   const Params& params, const std::string& method) {
  RunRecord record;
  record.method = method;
  record.k = clustering.k();
  record.cost = ClusteringCost(clustering, data);
  record.balance = ClusteringBalance(clustering, data);
  record.sizes = clustering.Sizes();
  std::sort(record.sizes.begin(), record.sizes.end(), std::greater<>());
  record.q = CapacityThreshold(static_cast<long>(data.size()), clustering.k(),
                               params.epsilon);
  record.t = params.t;
  record.seed = params.seed;
  return record;
}

FiveNumberSummary SizeDispersion(std::span<const std::size_t> sizes) {
  if (sizes.empty()) throw ContractViolation("size dispersion of empty list");
  std::vector<double> sorted(sizes.begin(), sizes.end());
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
  };
  return {sorted.front(), quantile(0.25), quantile(0.5), quantile(0.75),
          sorted.back()};
}

nlohmann::json RecordToJson(const RunRecord& record, bool include_timing) {
  nlohmann::json j;
  j["method"] = record.method;
  j["k"] = record.k;
  j["status"] = record.status;
  if (record.ok()) {
    j["cost"] = record.cost;
    j["balance"] = record.balance.value();
    j["balance_numerator"] = record.balance.numerator();
    j["balance_denominator"] = record.balance.denominator();
    j["sizes"] = record.sizes;
  } else {
    j["message"] = record.message;
  }
  j["q"] = record.q;
  j["t"] = record.t.ToString();
  j["seed"] = record.seed;
  if (include_timing) j["wall_time_ms"] = record.wall_time_ms;
  return j;
}

RunRecord RecordFromJson(const nlohmann::json& j) {
  RunRecord r;
  try {
    r.method = j.at("method").get<std::string>();
    r.k = j.at("k").get<int>();
    r.status = j.at("status").get<std::string>();
    if (r.ok()) {
      r.cost = j.at("cost").get<double>();
      r.balance = BalanceRatio(j.at("balance_numerator").get<std::size_t>(),
                               j.at("balance_denominator").get<std::size_t>());
      r.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    } else {
      r.message = j.value("message", "");
    }
    r.q = j.at("q").get<long>();
    r.t = ThresholdFM::Parse(j.at("t").get<std::string>());
    r.seed = j.at("seed").get<uint64_t>();
    r.wall_time_ms = j.value("wall_time_ms", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(DataErrorKind::kIo,
                    std::string("malformed run record: ") + e.what());
  }
  return r;
}

std::string RecordsToCsv(std::span<const RunRecord> records) {
  std::ostringstream out;
  out.precision(17);
  out << "method,k,status,cost,balance,balance_numerator,balance_denominator,"
         "max_size,min_size,q,t,seed,wall_time_ms\n";
  for (const auto& r : records) {
    out << r.method << ',' << r.k << ',' << r.status << ',';
    if (r.ok()) {
      out << r.cost << ',' << r.balance.value() << ','
          << r.balance.numerator() << ',' << r.balance.denominator() << ','
          << r.sizes.front() << ',' << r.sizes.back();
    } else {
      out << ",,,,,";
    }
    out << ',' << r.q << ',' << r.t.ToString() << ',' << r.seed << ','
        << r.wall_time_ms << '\n';
  }
  return out.str();
}

}  // namespace faircap
