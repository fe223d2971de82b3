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

#ifndef FAIRCAP_EXPERIMENT_H_
#define FAIRCAP_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "faircap/baselines.h"
#include "faircap/config.h"
#include "faircap/core.h"
#include "faircap/ingest.h"
#include "faircap/metrics.h"

namespace faircap {

// Gaussian blobs with a binary protected column "group" whose global
// balance is the requested ratio (minority count rounded to the nearest
// integer). Columns: id, x0..x{dim-1}, group; minority rows carry group=1.
struct GeneratorSpec {
  std::size_t n = 300;
  double balance = 1.0;  // in (0, 1]
  int clusters = 3;
  // Explicit blob cardinalities; must sum to n. Empty = near-equal split.
  std::vector<std::size_t> blob_sizes;
  double noise = 0.5;   // per-coordinate standard deviation
  double spread = 10.0; // blob centers uniform in [0, spread]^dim
  std::size_t dim = 2;
  // 0 = protected labels independent of blobs; larger values push the
  // minority group into the later blobs.
  double label_skew = 0.0;
  uint64_t seed = 0;
};

std::size_t MinorityCount(std::size_t n, double balance);
std::string GenerateCsv(const GeneratorSpec& spec);
// Throws DataError(kIo) when the path is not writable.
void WriteGeneratedCsv(const GeneratorSpec& spec, const std::string& path);
// How to load a generated file.
DatasetSpec GeneratedDatasetSpec(const std::string& path);

struct MethodOverride {
  std::optional<double> epsilon;
  std::optional<double> lambda;
};

struct ExperimentConfig {
  std::string name = "dataset";
  std::optional<DatasetSpec> dataset;
  std::optional<GeneratorSpec> generator;
  std::vector<Method> methods = AllMethods();
  int k_min = 2;
  int k_max = 14;
  int k_step = 2;
  ThresholdFM t = ThresholdFM::Make(1, 2);
  double lambda = 0.3;
  double epsilon_partitioning = 1.01;
  double epsilon_hierarchical = 1.2;
  uint64_t seed = 0;
  std::string output_dir = "faircap_out";
  int threads = 1;
  bool trace = false;
  bool export_fairlets = false;
  std::map<Method, MethodOverride> overrides;

  std::vector<int> KValues() const;
  // Hierarchical methods use epsilon_hierarchical, everything else
  // epsilon_partitioning, unless a [method.NAME] section overrides it.
  double EpsilonFor(Method method) const;
  double LambdaFor(Method method) const;
};

// Relative dataset paths are resolved against base_dir.
ExperimentConfig ParseConfig(const IniDocument& doc,
                             const std::string& base_dir = "");
ExperimentConfig LoadConfig(const std::string& path);

// Environment variable that, when set, replaces output_dir.
inline constexpr const char* kOutputDirEnv = "FAIRCAP_OUTPUT_DIR";

struct SweepResult {
  nlohmann::json provenance;
  std::vector<RunRecord> records;  // sorted by (method name, k)
  std::map<std::string, Trace> traces;  // "<method>_k<k>" -> trace
};

// Every (method, k) cell; infeasible or failing cells become records with
// status "infeasible" / "error" and the sweep carries on.
SweepResult RunSweep(const ExperimentConfig& config, const Dataset& data);

// First line provenance, then one record per line.
std::string SweepToJsonLines(const SweepResult& sweep);

// 0 success, 2 some run failed with a non-infeasibility error, 3 every run
// infeasible.
int SweepExitCode(const SweepResult& sweep);

struct ExperimentOutcome {
  SweepResult sweep;
  std::string output_dir;
  int exit_code = 0;
};

// Loads or generates the dataset, runs the sweep and writes records.jsonl,
// summary.csv and (optionally) traces and fairlet decompositions.
ExperimentOutcome RunExperiment(const ExperimentConfig& config);

Dataset LoadExperimentDataset(const ExperimentConfig& config,
                              const std::string& output_dir);

}  // namespace faircap

#endif  // FAIRCAP_EXPERIMENT_H_
