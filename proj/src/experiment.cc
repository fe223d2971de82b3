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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "faircap/error.h"
#include "faircap/fairlets.h"
#include "faircap/random.h"

namespace faircap {
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Synthetic data

std::size_t MinorityCount(std::size_t n, double balance) {
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * balance / (1.0 + balance)));
}

std::string GenerateCsv(const GeneratorSpec& spec) {
  if (spec.n < 2) throw ContractViolation("generator needs n >= 2");
  if (!(spec.balance > 0.0) || spec.balance > 1.0) {
    throw ContractViolation("generator balance must be in (0, 1]");
  }
  if (spec.dim < 1) throw ContractViolation("generator needs dim >= 1");
  if (!(spec.noise >= 0.0)) throw ContractViolation("noise must be >= 0");

  std::vector<std::size_t> sizes = spec.blob_sizes;
  if (sizes.empty()) {
    if (spec.clusters < 1) throw ContractViolation("generator needs clusters >= 1");
    const std::size_t c = static_cast<std::size_t>(spec.clusters);
    for (std::size_t i = 0; i < c; ++i) {
      sizes.push_back(spec.n / c + (i < spec.n % c ? 1 : 0));
    }
  } else if (std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) !=
             spec.n) {
    throw ContractViolation("blob sizes must sum to n");
  }

  RandomStream centers_rng(spec.seed, "generator/centers");
  RandomStream points_rng(spec.seed, "generator/points");
  RandomStream labels_rng(spec.seed, "generator/labels");

  std::vector<std::vector<double>> centers(sizes.size());
  for (auto& c : centers) {
    for (std::size_t d = 0; d < spec.dim; ++d) {
      c.push_back(centers_rng.Uniform01() * spec.spread);
    }
  }
  std::vector<std::size_t> blob_of;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    blob_of.insert(blob_of.end(), sizes[b], b);
  }

  // Minority rows: highest keys, key = uniform + skew * relative blob index.
  const std::size_t minority = MinorityCount(spec.n, spec.balance);
  const double blobs = static_cast<double>(std::max<std::size_t>(sizes.size() - 1, 1));
  std::vector<double> key(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    key[i] = labels_rng.Uniform01() +
             spec.label_skew * static_cast<double>(blob_of[i]) / blobs;
  }
  std::vector<std::size_t> order(spec.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  std::vector<int> label(spec.n, 0);
  for (std::size_t i = 0; i < minority; ++i) label[order[i]] = 1;

  std::ostringstream out;
  out << "id";
  for (std::size_t d = 0; d < spec.dim; ++d) out << ",x" << d;
  out << ",group\n";
  char buf[32];
  for (std::size_t i = 0; i < spec.n; ++i) {
    out << 'r' << i;
    for (std::size_t d = 0; d < spec.dim; ++d) {
      const double v = points_rng.Normal(centers[blob_of[i]][d], spec.noise);
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << ',' << label[i] << '\n';
  }
  return out.str();
}

void WriteGeneratedCsv(const GeneratorSpec& spec, const std::string& path) {
  const std::string text = GenerateCsv(spec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(DataErrorKind::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw DataError(DataErrorKind::kIo, "write failed for '" + path + "'");
}

DatasetSpec GeneratedDatasetSpec(const std::string& path) {
  DatasetSpec spec;
  spec.path = path;
  spec.protected_column = "group";
  spec.positive_label = "1";
  spec.id_column = "id";
  spec.scale = Scaling::kNone;
  return spec;
}

// ---------------------------------------------------------------------------
// Configuration

std::vector<int> ExperimentConfig::KValues() const {
  std::vector<int> ks;
  for (int k = k_min; k <= k_max; k += k_step) ks.push_back(k);
  return ks;
}

double ExperimentConfig::EpsilonFor(Method method) const {
  const auto it = overrides.find(method);
  if (it != overrides.end() && it->second.epsilon) return *it->second.epsilon;
  return IsHierarchical(method) ? epsilon_hierarchical : epsilon_partitioning;
}

double ExperimentConfig::LambdaFor(Method method) const {
  const auto it = overrides.find(method);
  if (it != overrides.end() && it->second.lambda) return *it->second.lambda;
  return lambda;
}

namespace {

using Entry = IniDocument::Entry;

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    items.push_back(item.substr(first, last - first + 1));
  }
  return items;
}

long long ToInteger(const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(e.value, &used);
    if (used == e.value.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ConfigError(e.line, "'" + key + "' must be an integer, got '" +
                                e.value + "'");
}

uint64_t ToUnsigned(const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    if (!e.value.empty() && e.value[0] != '-') {
      const unsigned long long v = std::stoull(e.value, &used);
      if (used == e.value.size()) return v;
    }
  } catch (const std::logic_error&) {
  }
  throw ConfigError(e.line, "'" + key + "' must be a non-negative integer, got '" +
                                e.value + "'");
}

double ToReal(const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(e.value, &used);
    if (used == e.value.size() && std::isfinite(v)) return v;
  } catch (const std::logic_error&) {
  }
  throw ConfigError(e.line, "'" + key + "' must be a number, got '" +
                                e.value + "'");
}

bool ToBool(const Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ConfigError(e.line, "'" + key + "' must be true or false, got '" +
                                e.value + "'");
}

void CheckKeys(const IniDocument& doc, const std::string& section,
               const std::set<std::string>& allowed) {
  for (const auto& key : doc.Keys(section)) {
    if (!allowed.contains(key)) {
      throw ConfigError(doc.Get(section, key)->line,
                        "unknown key '" + key + "' in [" + section + "]");
    }
  }
}

}  // namespace

ExperimentConfig ParseConfig(const IniDocument& doc,
                             const std::string& base_dir) {
  ExperimentConfig config;
  auto get = [&](const std::string& section, const std::string& key) {
    return doc.Get(section, key);
  };

  for (const auto& section : doc.Sections()) {
    if (section.empty()) {
      const auto keys = doc.Keys("");
      if (!keys.empty()) {
        throw ConfigError(doc.Get("", keys.front())->line,
                          "key '" + keys.front() + "' outside any section");
      }
      continue;
    }
    const bool known = section == "dataset" || section == "generator" ||
                       section == "run" || section.rfind("method.", 0) == 0;
    if (!known) {
      throw ConfigError(doc.SectionLine(section),
                        "unknown section [" + section + "]");
    }
  }

  if (doc.HasSection("dataset") && doc.HasSection("generator")) {
    throw ConfigError(doc.SectionLine("generator"),
                      "[dataset] and [generator] are mutually exclusive");
  }
  if (!doc.HasSection("dataset") && !doc.HasSection("generator")) {
    throw ConfigError(0, "config needs a [dataset] or [generator] section");
  }

  if (doc.HasSection("dataset")) {
    CheckKeys(doc, "dataset",
              {"name", "path", "protected_column", "positive_label",
               "drop_columns", "id_column", "scale", "delimiter"});
    DatasetSpec spec;
    const auto path = get("dataset", "path");
    if (!path) {
      throw ConfigError(doc.SectionLine("dataset"), "[dataset] needs 'path'");
    }
    fs::path p(path->value);
    if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
    spec.path = p.string();
    const auto column = get("dataset", "protected_column");
    if (!column) {
      throw ConfigError(doc.SectionLine("dataset"),
                        "[dataset] needs 'protected_column'");
    }
    spec.protected_column = column->value;
    if (auto e = get("dataset", "positive_label")) spec.positive_label = e->value;
    if (auto e = get("dataset", "drop_columns")) {
      spec.drop_columns = SplitList(e->value);
    }
    if (auto e = get("dataset", "id_column")) spec.id_column = e->value;
    if (auto e = get("dataset", "scale")) {
      if (e->value == "minmax") {
        spec.scale = Scaling::kMinMax;
      } else if (e->value == "none") {
        spec.scale = Scaling::kNone;
      } else {
        throw ConfigError(e->line, "'scale' must be minmax or none, got '" +
                                       e->value + "'");
      }
    }
    if (auto e = get("dataset", "delimiter")) {
      if (e->value == "tab" || e->value == "\\t") {
        spec.delimiter = '\t';
      } else if (e->value.size() == 1) {
        spec.delimiter = e->value[0];
      } else {
        throw ConfigError(e->line, "'delimiter' must be one character");
      }
    }
    config.name = fs::path(spec.path).stem().string();
    if (auto e = get("dataset", "name")) config.name = e->value;
    config.dataset = spec;
  }

  if (doc.HasSection("generator")) {
    CheckKeys(doc, "generator",
              {"name", "n", "balance", "clusters", "blob_sizes", "noise",
               "spread", "dim", "label_skew", "seed"});
    GeneratorSpec spec;
    if (auto e = get("generator", "n")) {
      const long long n = ToInteger(*e, "n");
      if (n < 2) throw ConfigError(e->line, "'n' must be >= 2");
      spec.n = static_cast<std::size_t>(n);
    }
    if (auto e = get("generator", "balance")) {
      spec.balance = ToReal(*e, "balance");
      if (!(spec.balance > 0.0) || spec.balance > 1.0) {
        throw ConfigError(e->line, "'balance' must be in (0, 1]");
      }
    }
    if (auto e = get("generator", "clusters")) {
      const long long c = ToInteger(*e, "clusters");
      if (c < 1) throw ConfigError(e->line, "'clusters' must be >= 1");
      spec.clusters = static_cast<int>(c);
    }
    if (auto e = get("generator", "blob_sizes")) {
      std::size_t total = 0;
      for (const auto& item : SplitList(e->value)) {
        const long long s = ToInteger(Entry{item, e->line}, "blob_sizes");
        if (s < 1) throw ConfigError(e->line, "blob sizes must be >= 1");
        spec.blob_sizes.push_back(static_cast<std::size_t>(s));
        total += static_cast<std::size_t>(s);
      }
      if (!get("generator", "n")) spec.n = total;
      if (total != spec.n) {
        throw ConfigError(e->line, "blob sizes sum to " + std::to_string(total) +
                                       ", n is " + std::to_string(spec.n));
      }
      spec.clusters = static_cast<int>(spec.blob_sizes.size());
    }
    if (auto e = get("generator", "noise")) {
      spec.noise = ToReal(*e, "noise");
      if (spec.noise < 0.0) throw ConfigError(e->line, "'noise' must be >= 0");
    }
    if (auto e = get("generator", "spread")) spec.spread = ToReal(*e, "spread");
    if (auto e = get("generator", "dim")) {
      const long long d = ToInteger(*e, "dim");
      if (d < 1) throw ConfigError(e->line, "'dim' must be >= 1");
      spec.dim = static_cast<std::size_t>(d);
    }
    if (auto e = get("generator", "label_skew")) {
      spec.label_skew = ToReal(*e, "label_skew");
    }
    if (auto e = get("generator", "seed")) spec.seed = ToUnsigned(*e, "seed");
    config.name = "synthetic";
    if (auto e = get("generator", "name")) config.name = e->value;
    config.generator = spec;
  }

  CheckKeys(doc, "run",
            {"methods", "k_min", "k_max", "k_step", "t", "lambda",
             "epsilon_partitioning", "epsilon_hierarchical", "seed", "output",
             "threads", "trace", "export_fairlets"});
  if (auto e = get("run", "methods")) {
    if (e->value != "all") {
      config.methods.clear();
      for (const auto& name : SplitList(e->value)) {
        const auto method = ParseMethod(name);
        if (!method) throw ConfigError(e->line, "unknown method '" + name + "'");
        if (std::find(config.methods.begin(), config.methods.end(), *method) ==
            config.methods.end()) {
          config.methods.push_back(*method);
        }
      }
      if (config.methods.empty()) {
        throw ConfigError(e->line, "'methods' lists no method");
      }
    }
  }
  if (auto e = get("run", "k_min")) config.k_min = static_cast<int>(ToInteger(*e, "k_min"));
  if (auto e = get("run", "k_max")) config.k_max = static_cast<int>(ToInteger(*e, "k_max"));
  if (auto e = get("run", "k_step")) config.k_step = static_cast<int>(ToInteger(*e, "k_step"));
  if (config.k_min < 1 || config.k_step < 1 || config.k_max < config.k_min) {
    auto e = get("run", "k_min");
    throw ConfigError(e ? e->line : doc.SectionLine("run"),
                      "k range needs 1 <= k_min <= k_max and k_step >= 1");
  }
  if (auto e = get("run", "t")) {
    try {
      config.t = ThresholdFM::Parse(e->value);
    } catch (const ContractViolation& err) {
      throw ConfigError(e->line, err.what());
    }
  }
  if (auto e = get("run", "lambda")) {
    config.lambda = ToReal(*e, "lambda");
    if (!(config.lambda > 0.0)) throw ConfigError(e->line, "'lambda' must be > 0");
  }
  for (const char* key : {"epsilon_partitioning", "epsilon_hierarchical"}) {
    if (auto e = get("run", key)) {
      const double eps = ToReal(*e, key);
      if (eps < 1.0) throw ConfigError(e->line, std::string("'") + key + "' must be >= 1");
      (std::string(key) == "epsilon_partitioning" ? config.epsilon_partitioning
                                                  : config.epsilon_hierarchical) = eps;
    }
  }
  if (auto e = get("run", "seed")) config.seed = ToUnsigned(*e, "seed");
  if (auto e = get("run", "output")) {
    fs::path p(e->value);
    if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
    config.output_dir = p.string();
  }
  if (auto e = get("run", "threads")) {
    const long long th = ToInteger(*e, "threads");
    if (th < 1) throw ConfigError(e->line, "'threads' must be >= 1");
    config.threads = static_cast<int>(th);
  }
  if (auto e = get("run", "trace")) config.trace = ToBool(*e, "trace");
  if (auto e = get("run", "export_fairlets")) {
    config.export_fairlets = ToBool(*e, "export_fairlets");
  }

  for (const auto& section : doc.Sections()) {
    if (section.rfind("method.", 0) != 0) continue;
    const std::string name = section.substr(7);
    const auto method = ParseMethod(name);
    if (!method) {
      throw ConfigError(doc.SectionLine(section), "unknown method '" + name + "'");
    }
    CheckKeys(doc, section, {"epsilon", "lambda"});
    MethodOverride o;
    if (auto e = get(section, "epsilon")) {
      o.epsilon = ToReal(*e, "epsilon");
      if (*o.epsilon < 1.0) throw ConfigError(e->line, "'epsilon' must be >= 1");
    }
    if (auto e = get(section, "lambda")) {
      o.lambda = ToReal(*e, "lambda");
      if (!(*o.lambda > 0.0)) throw ConfigError(e->line, "'lambda' must be > 0");
    }
    config.overrides[*method] = o;
  }
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  const IniDocument doc = IniDocument::Load(path);
  return ParseConfig(doc, fs::path(path).parent_path().string());
}

// ---------------------------------------------------------------------------
// Sweep

SweepResult RunSweep(const ExperimentConfig& config, const Dataset& data) {
  struct Cell {
    Method method;
    int k;
  };
  std::vector<Cell> cells;
  for (Method m : config.methods) {
    for (int k : config.KValues()) cells.push_back({m, k});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    const std::string na = MethodName(a.method);
    const std::string nb = MethodName(b.method);
    return na != nb ? na < nb : a.k < b.k;
  });

  std::vector<RunRecord> records(cells.size());
  std::vector<Trace> traces(cells.size());
  auto run_cell = [&](std::size_t i) {
    const Cell& cell = cells[i];
    Params params;
    params.k = cell.k;
    params.t = config.t;
    params.epsilon = config.EpsilonFor(cell.method);
    params.lambda = config.LambdaFor(cell.method);
    params.seed = config.seed;
    RunRecord failed;
    failed.method = MethodName(cell.method);
    failed.k = cell.k;
    failed.t = config.t;
    failed.seed = config.seed;
    try {
      failed.q = CapacityThreshold(static_cast<long>(data.size()), cell.k,
                                   params.epsilon);
      records[i] = RunPipeline(cell.method, data, params,
                               config.trace ? &traces[i] : nullptr)
                       .record;
      return;
    } catch (const InfeasibleError& e) {
      failed.status = "infeasible";
      failed.message = e.what();
    } catch (const std::exception& e) {
      failed.status = "error";
      failed.message = e.what();
    }
    records[i] = failed;
  };

  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(std::max(config.threads, 1)), cells.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
      });
    }
  }

  SweepResult sweep;
  const auto counts = data.GroupCounts();
  const BalanceRatio balance = BalanceOf(counts[0], counts[1]);
  std::vector<std::string> method_names;
  for (Method m : config.methods) method_names.push_back(MethodName(m));
  std::sort(method_names.begin(), method_names.end());
  sweep.provenance = {
      {"type", "provenance"},
      {"dataset", config.name},
      {"n", data.size()},
      {"d", data.dim()},
      {"group_counts", {counts[0], counts[1]}},
      {"dataset_balance", balance.value()},
      {"t", config.t.ToString()},
      {"lambda", config.lambda},
      {"epsilon_partitioning", config.epsilon_partitioning},
      {"epsilon_hierarchical", config.epsilon_hierarchical},
      {"seed", config.seed},
      {"k_values", config.KValues()},
      {"methods", method_names},
  };
  sweep.records = std::move(records);
  if (config.trace) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      sweep.traces[std::string(MethodName(cells[i].method)) + "_k" +
                   std::to_string(cells[i].k)] = std::move(traces[i]);
    }
  }
  return sweep;
}

std::string SweepToJsonLines(const SweepResult& sweep) {
  std::string out = sweep.provenance.dump() + "\n";
  for (const auto& record : sweep.records) {
    nlohmann::json j = RecordToJson(record);
    j["type"] = "record";
    out += j.dump();
    out += '\n';
  }
  return out;
}

int SweepExitCode(const SweepResult& sweep) {
  bool any_error = false;
  bool all_infeasible = !sweep.records.empty();
  for (const auto& r : sweep.records) {
    if (r.status == "error") any_error = true;
    if (r.status != "infeasible") all_infeasible = false;
  }
  if (all_infeasible) return 3;
  if (any_error) return 2;
  return 0;
}

namespace {

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(DataErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw DataError(DataErrorKind::kIo, "write failed for '" + path.string() + "'");
}

}  // namespace

Dataset LoadExperimentDataset(const ExperimentConfig& config,
                              const std::string& output_dir) {
  if (config.generator) {
    const fs::path path = fs::path(output_dir) / "dataset.csv";
    WriteGeneratedCsv(*config.generator, path.string());
    return LoadCsv(GeneratedDatasetSpec(path.string()));
  }
  if (!config.dataset) throw ConfigError(0, "no dataset configured");
  return LoadCsv(*config.dataset);
}

ExperimentOutcome RunExperiment(const ExperimentConfig& config) {
  ExperimentOutcome outcome;
  outcome.output_dir = config.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    outcome.output_dir = env;
  }
  std::error_code ec;
  fs::create_directories(outcome.output_dir, ec);
  if (ec) {
    throw DataError(DataErrorKind::kIo, "cannot create output directory '" +
                                            outcome.output_dir + "'");
  }
  const fs::path dir(outcome.output_dir);

  const Dataset data = LoadExperimentDataset(config, outcome.output_dir);
  outcome.sweep = RunSweep(config, data);
  WriteFile(dir / "records.jsonl", SweepToJsonLines(outcome.sweep));
  WriteFile(dir / "summary.csv", RecordsToCsv(outcome.sweep.records));
  if (config.trace) {
    for (const auto& [name, trace] : outcome.sweep.traces) {
      WriteFile(dir / ("trace_" + name + ".jsonl"), TraceToJsonLines(trace));
    }
  }
  if (config.export_fairlets) {
    bool vanilla = false;
    bool mcf = false;
    for (Method m : config.methods) {
      if (!UsesFairlets(m)) continue;
      const std::string name = MethodName(m);
      (name.find("mcf") != std::string::npos ? mcf : vanilla) = true;
    }
    try {
      if (vanilla) {
        WriteFile(dir / "fairlets_vanilla.json",
                  DecompositionToJson(VanillaDecompose(data, config.t, config.seed), data)
                          .dump(1) + "\n");
      }
      if (mcf) {
        WriteFile(dir / "fairlets_mcf.json",
                  DecompositionToJson(McfDecompose(data, config.t, config.seed), data)
                          .dump(1) + "\n");
      }
    } catch (const InfeasibleError&) {
      // Already reported per run.
    }
  }
  outcome.exit_code = SweepExitCode(outcome.sweep);
  return outcome;
}

}  // namespace faircap
