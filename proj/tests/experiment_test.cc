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

#include "faircap/experiment.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "faircap/config.h"
#include "faircap/error.h"
#include "faircap/ingest.h"

namespace faircap {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("faircap_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int ErrorLine(const std::string& text) {
  try {
    ParseConfig(IniDocument::Parse(text));
  } catch (const ConfigError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ConfigError for:\n" << text;
  return -1;
}

TEST(IniTest, SectionsKeysAndComments) {
  const auto doc = IniDocument::Parse(
      "# comment\n[run]\nk_min = 2 \n; other\n\n[method.hier_fair_cap_mcf]\n"
      "epsilon=1.3\n");
  EXPECT_TRUE(doc.HasSection("run"));
  EXPECT_EQ(doc.Get("run", "k_min")->value, "2");
  EXPECT_EQ(doc.Get("run", "k_min")->line, 3);
  EXPECT_EQ(doc.SectionLine("method.hier_fair_cap_mcf"), 6);
  EXPECT_FALSE(doc.Get("run", "k_max").has_value());
}

TEST(IniTest, MalformedLinesCarryLineNumbers) {
  for (const auto& [text, line] : std::vector<std::pair<std::string, int>>{
           {"[run]\nk_min\n", 2},
           {"[run]\nk=1\nk=2\n", 3},
           {"[run]\n[run]\n", 2},
           {"[run\n", 1}}) {
    try {
      IniDocument::Parse(text);
      ADD_FAILURE() << text;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.line(), line) << text;
    }
  }
}

TEST(ParseConfigTest, DefaultsAndOverrides) {
  const auto config = ParseConfig(IniDocument::Parse(
      "[generator]\nn = 120\nbalance = 0.5\n[run]\nmethods = "
      "hier_fair_cap_mcf, vanilla_kmedoids\nk_min = 3\nk_max = 7\nt = 1/3\n"
      "[method.hier_fair_cap_mcf]\nepsilon = 1.5\nlambda = 0.1\n"));
  ASSERT_TRUE(config.generator.has_value());
  EXPECT_EQ(config.generator->n, 120u);
  EXPECT_EQ(config.methods,
            (std::vector<Method>{Method::kHierFairCapMcf, Method::kVanillaKMedoids}));
  EXPECT_EQ(config.KValues(), (std::vector<int>{3, 5, 7}));
  EXPECT_EQ(config.t, ThresholdFM::Make(1, 3));
  EXPECT_DOUBLE_EQ(config.EpsilonFor(Method::kHierFairCapMcf), 1.5);
  EXPECT_DOUBLE_EQ(config.EpsilonFor(Method::kHierFairCapVanilla), 1.2);
  EXPECT_DOUBLE_EQ(config.EpsilonFor(Method::kKMedFairCapMcf), 1.01);
  EXPECT_DOUBLE_EQ(config.LambdaFor(Method::kHierFairCapMcf), 0.1);
  EXPECT_DOUBLE_EQ(config.LambdaFor(Method::kKMedFairCapMcf), 0.3);
}

TEST(ParseConfigTest, DatasetPathResolvesAgainstBaseDir) {
  const auto config = ParseConfig(
      IniDocument::Parse("[dataset]\npath = a.csv\nprotected_column = sex\n"
                         "delimiter = ;\ndrop_columns = x, y\n"),
      "/base");
  ASSERT_TRUE(config.dataset.has_value());
  EXPECT_EQ(config.dataset->path, "/base/a.csv");
  EXPECT_EQ(config.dataset->delimiter, ';');
  EXPECT_EQ(config.dataset->drop_columns, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(config.name, "a");
}

TEST(ParseConfigTest, ErrorsPointAtTheOffendingLine) {
  EXPECT_EQ(ErrorLine("[generator]\n[run]\nbogus = 1\n"), 3);
  EXPECT_EQ(ErrorLine("[generator]\n[extra]\n"), 2);
  EXPECT_EQ(ErrorLine("[generator]\nn = ten\n"), 2);
  EXPECT_EQ(ErrorLine("[generator]\n[run]\nmethods = nope\n"), 3);
  EXPECT_EQ(ErrorLine("[generator]\n[run]\nt = 2\n"), 3);
  EXPECT_EQ(ErrorLine("[generator]\n[method.nope]\n"), 2);
  EXPECT_EQ(ErrorLine("[generator]\n[run]\nepsilon_partitioning = 0.9\n"), 3);
  EXPECT_EQ(ErrorLine("[dataset]\npath = x\nprotected_column = g\n[generator]\n"), 4);
  EXPECT_EQ(ErrorLine("[run]\n"), 0);
}

TEST(GeneratorTest, RequestedBalanceWithinOneCount) {
  for (std::size_t n : {50u, 101u, 300u, 395u, 649u}) {
    for (double b : {0.3, 0.5, 0.695, 0.899, 1.0}) {
      GeneratorSpec spec;
      spec.n = n;
      spec.balance = b;
      spec.seed = n;
      DatasetSpec load;
      load.protected_column = "group";
      load.positive_label = "1";
      load.scale = Scaling::kNone;
      const Dataset data =
          DatasetFromTable(ParseCsv(GenerateCsv(spec)), load);
      const auto counts = data.GroupCounts();
      EXPECT_EQ(counts[0] + counts[1], n);
      // Oracle: the minority count whose ratio is closest to b.
      std::size_t best = 0;
      for (std::size_t m = 1; m <= n / 2; ++m) {
        const double r = static_cast<double>(m) / (n - m);
        const double rb = static_cast<double>(best) / (n - best);
        if (std::abs(r - b) < std::abs(rb - b)) best = m;
      }
      EXPECT_LE(std::max(counts[1], best) - std::min(counts[1], best), 1u)
          << n << " " << b;
    }
  }
}

TEST(GeneratorTest, MinorityCountMatchesTableOneSplits) {
  EXPECT_EQ(MinorityCount(395, 187.0 / 208.0), 187u);
  EXPECT_EQ(MinorityCount(649, 266.0 / 383.0), 266u);
  EXPECT_EQ(MinorityCount(3404, 1697.0 / 1707.0), 1697u);
}

TEST(GeneratorTest, BlobSizesAndDeterminism) {
  GeneratorSpec spec;
  spec.n = 30;
  spec.blob_sizes = {20, 5, 5};
  spec.clusters = 3;
  spec.seed = 3;
  EXPECT_EQ(GenerateCsv(spec), GenerateCsv(spec));
  GeneratorSpec other = spec;
  other.seed = 4;
  EXPECT_NE(GenerateCsv(spec), GenerateCsv(other));
  const CsvTable table = ParseCsv(GenerateCsv(spec));
  EXPECT_EQ(table.header, (std::vector<std::string>{"id", "x0", "x1", "group"}));
  EXPECT_EQ(table.rows.size(), 30u);
}

ExperimentConfig SmallConfig(const fs::path& out) {
  ExperimentConfig config;
  GeneratorSpec gen;
  gen.n = 60;
  gen.balance = 0.8;
  gen.seed = 5;
  config.generator = gen;
  config.k_min = 2;
  config.k_max = 4;
  config.seed = 11;
  config.trace = true;
  config.export_fairlets = true;
  config.output_dir = out.string();
  return config;
}

TEST(RunExperimentTest, WritesDeterministicOutputs) {
  unsetenv(kOutputDirEnv);
  const fs::path a = TempDir("exp_a");
  const fs::path b = TempDir("exp_b");
  const auto first = RunExperiment(SmallConfig(a));
  ExperimentConfig second_config = SmallConfig(b);
  second_config.threads = 3;
  const auto second = RunExperiment(second_config);
  EXPECT_EQ(first.exit_code, 0);
  EXPECT_EQ(Slurp(a / "records.jsonl"), Slurp(b / "records.jsonl"));
  EXPECT_TRUE(fs::exists(a / "summary.csv"));
  EXPECT_TRUE(fs::exists(a / "dataset.csv"));
  EXPECT_TRUE(fs::exists(a / "fairlets_vanilla.json"));
  EXPECT_TRUE(fs::exists(a / "fairlets_mcf.json"));
  EXPECT_TRUE(fs::exists(a / "trace_kmed_fair_cap_mcf_k2.jsonl"));
  // 7 methods x k in {2, 4}
  EXPECT_EQ(first.sweep.records.size(), 14u);
  for (std::size_t i = 1; i < first.sweep.records.size(); ++i) {
    const auto& p = first.sweep.records[i - 1];
    const auto& r = first.sweep.records[i];
    EXPECT_TRUE(p.method < r.method || (p.method == r.method && p.k < r.k));
  }
  const std::string jsonl = Slurp(a / "records.jsonl");
  EXPECT_EQ(jsonl.find("wall_time"), std::string::npos);
  EXPECT_EQ(jsonl.rfind("{\"", 0), 0u);
  EXPECT_NE(jsonl.find("\"type\":\"provenance\""), std::string::npos);
}

TEST(RunExperimentTest, EnvironmentOverridesOutputDir) {
  const fs::path env = TempDir("exp_env");
  setenv(kOutputDirEnv, env.c_str(), 1);
  ExperimentConfig config = SmallConfig(TempDir("exp_ignored"));
  config.k_max = 2;
  config.methods = {Method::kVanillaKMedoids};
  const auto outcome = RunExperiment(config);
  unsetenv(kOutputDirEnv);
  EXPECT_EQ(outcome.output_dir, env.string());
  EXPECT_TRUE(fs::exists(env / "records.jsonl"));
}

TEST(SweepTest, InfeasibleCellsAreRecordedAndExitCodeThree) {
  ExperimentConfig config;
  config.k_min = 2;
  config.k_max = 2;
  config.methods = {Method::kKMedFairCapMcf, Method::kHierFairCapVanilla};
  // balance 1/4 < t = 1/2
  std::vector<double> xs;
  std::vector<int> labels;
  for (int i = 0; i < 20; ++i) {
    xs.push_back(i);
    labels.push_back(i % 5 == 0 ? 1 : 0);
  }
  const Dataset data(xs, 1, labels);
  const SweepResult sweep = RunSweep(config, data);
  ASSERT_EQ(sweep.records.size(), 2u);
  for (const auto& r : sweep.records) EXPECT_EQ(r.status, "infeasible");
  EXPECT_EQ(SweepExitCode(sweep), 3);

  config.methods.push_back(Method::kVanillaKMedoids);
  EXPECT_EQ(SweepExitCode(RunSweep(config, data)), 0);
}

}  // namespace
}  // namespace faircap
