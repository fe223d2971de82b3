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

// faircap: command-line harness for fair-capacitated clustering sweeps.
//
//   faircap generate --n 300 --balance 0.5 --out data.csv
//   faircap run --config sweep.ini
//   faircap report --input out/records.jsonl
//   faircap validate --config sweep.ini --decomposition out/fairlets_mcf.json

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "faircap/error.h"
#include "faircap/experiment.h"
#include "faircap/fairlets.h"
#include "faircap/ingest.h"
#include "faircap/report.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInfeasible = 3;

std::vector<std::size_t> ParseSizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) sizes.push_back(std::stoul(item));
  }
  return sizes;
}

int RunMain(const std::string& config_path, const std::string& output_dir) {
  faircap::ExperimentConfig config = faircap::LoadConfig(config_path);
  if (!output_dir.empty()) {
    config.output_dir = output_dir;
    unsetenv(faircap::kOutputDirEnv);
  }
  const faircap::ExperimentOutcome outcome = faircap::RunExperiment(config);
  std::size_t ok = 0;
  for (const auto& r : outcome.sweep.records) {
    if (r.ok()) {
      ++ok;
    } else {
      std::cerr << r.method << " k=" << r.k << ": " << r.status << ": "
                << r.message << "\n";
    }
  }
  std::cout << ok << "/" << outcome.sweep.records.size()
            << " runs succeeded; records in " << outcome.output_dir
            << "/records.jsonl\n";
  return outcome.exit_code;
}

int ReportMain(const std::string& input, std::string out_dir) {
  if (out_dir.empty()) {
    out_dir = std::filesystem::path(input).parent_path().string();
    if (out_dir.empty()) out_dir = ".";
  }
  const faircap::SweepData sweep = faircap::ReadSweep(input);
  if (sweep.records.empty()) {
    throw faircap::DataError(faircap::DataErrorKind::kEmptyFile,
                             "'" + input + "' holds no run records");
  }
  const faircap::Report report = faircap::RenderReport(sweep);
  faircap::WriteReport(report, out_dir);
  std::cout << report.table_txt;
  return kExitOk;
}

int ValidateMain(const std::string& config_path, const std::string& path,
                 const std::string& threshold) {
  const faircap::ExperimentConfig config = faircap::LoadConfig(config_path);
  const std::string out_dir = config.output_dir;
  std::filesystem::create_directories(out_dir);
  const faircap::Dataset data = faircap::LoadExperimentDataset(config, out_dir);
  const faircap::ThresholdFM t =
      threshold.empty() ? config.t : faircap::ThresholdFM::Parse(threshold);
  std::ifstream in(path);
  if (!in) {
    throw faircap::DataError(faircap::DataErrorKind::kIo,
                             "cannot open '" + path + "'");
  }
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    throw faircap::DataError(faircap::DataErrorKind::kIo,
                             std::string("bad JSON: ") + e.what());
  }
  const auto decomposition = faircap::DecompositionFromJson(json, data, t);
  const auto report = faircap::Validate(decomposition, data, t);
  for (const auto& v : report.violations) std::cout << "violation: " << v << "\n";
  std::cout << decomposition.fairlets.size() << " fairlets, "
            << report.violations.size() << " violations, fairlet cost "
            << faircap::FairletCost(decomposition, data) << "\n";
  return report.ok() ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair-capacitated clustering toolkit"};
  app.require_subcommand(1);

  faircap::GeneratorSpec gen;
  std::string gen_out;
  std::string blob_sizes;
  auto* generate = app.add_subcommand("generate", "Write a synthetic blob dataset");
  generate->add_option("--n", gen.n, "Number of rows")->capture_default_str();
  generate->add_option("--balance", gen.balance, "Global protected-group balance in (0,1]")
      ->capture_default_str();
  generate->add_option("--clusters", gen.clusters, "Number of blobs")->capture_default_str();
  generate->add_option("--blob-sizes", blob_sizes, "Comma-separated blob sizes (sum = n)");
  generate->add_option("--noise", gen.noise, "Blob standard deviation")->capture_default_str();
  generate->add_option("--spread", gen.spread, "Blob centers in [0, spread]^dim")
      ->capture_default_str();
  generate->add_option("--dim", gen.dim, "Feature dimension")->capture_default_str();
  generate->add_option("--label-skew", gen.label_skew,
                       "Correlation between blob and protected group")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--out", gen_out, "Output CSV path")->required();

  std::string config_path;
  std::string output_dir;
  auto* run = app.add_subcommand("run", "Run a k-sweep described by a config file");
  run->add_option("--config", config_path, "Experiment config")->required();
  run->add_option("--output-dir", output_dir,
                  std::string("Override output directory (also ") +
                      faircap::kOutputDirEnv + ")");

  std::string report_input;
  std::string report_out;
  auto* report = app.add_subcommand("report", "Render SVG charts from sweep records");
  report->add_option("--input", report_input, "records.jsonl")->required();
  report->add_option("--out", report_out, "Output directory (default: input's)");

  std::string decomposition_path;
  std::string threshold;
  auto* validate = app.add_subcommand("validate", "Audit a fairlet decomposition");
  validate->add_option("--config", config_path, "Experiment config naming the dataset")
      ->required();
  validate->add_option("--decomposition", decomposition_path, "Decomposition JSON")
      ->required();
  validate->add_option("--t", threshold, "Threshold f/m (default: config's t)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate) {
      if (!blob_sizes.empty()) {
        gen.blob_sizes = ParseSizes(blob_sizes);
        gen.clusters = static_cast<int>(gen.blob_sizes.size());
      }
      faircap::WriteGeneratedCsv(gen, gen_out);
      std::cout << "wrote " << gen.n << " rows to " << gen_out << "\n";
      return kExitOk;
    }
    if (*run) return RunMain(config_path, output_dir);
    if (*report) return ReportMain(report_input, report_out);
    if (*validate) return ValidateMain(config_path, decomposition_path, threshold);
  } catch (const faircap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const faircap::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const faircap::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const faircap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
