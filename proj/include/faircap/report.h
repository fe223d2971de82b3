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

#ifndef FAIRCAP_REPORT_H_
#define FAIRCAP_REPORT_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "faircap/metrics.h"

namespace faircap {

struct SweepData {
  nlohmann::json provenance;  // may be null for record-only inputs
  std::vector<RunRecord> records;
};

// Reads a records.jsonl file (provenance line optional).
SweepData ReadSweep(const std::string& path);
SweepData ParseSweep(const std::string& jsonl);

struct Report {
  std::string cost_svg;     // cost vs k, one line per method
  std::string balance_svg;  // balance vs k, dashed t line, dotted dataset balance
  std::string sizes_svg;    // cluster-size boxplots per (k, method), dashed q
  std::string table_txt;
};

// Throws ContractViolation when there is no successful record.
Report RenderReport(const SweepData& sweep);

// Writes <prefix>cost.svg, <prefix>balance.svg, <prefix>sizes.svg and
// <prefix>report.txt into dir.
void WriteReport(const Report& report, const std::string& dir,
                 const std::string& prefix = "");

}  // namespace faircap

#endif  // FAIRCAP_REPORT_H_
