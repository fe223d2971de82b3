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

#include "faircap/fairlets.h"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "faircap/error.h"
#include "faircap/min_cost_flow.h"
#include "faircap/random.h"

namespace faircap {
namespace {

struct Groups {
  int blue_label;
  std::vector<std::size_t> blue;  // minority rows, ascending
  std::vector<std::size_t> red;   // majority rows, ascending
};

// Splits rows by group and checks the preconditions shared by both
// decompositions.
Groups PrepareGroups(const Dataset& data, const ThresholdFM& t) {
  if (t.f() != 1) {
    throw UnsupportedError("only thresholds t = 1/m are supported, got " +
                           t.ToString());
  }
  const auto counts = data.GroupCounts();
  Groups groups;
  groups.blue_label = counts[1] < counts[0] ? 1 : 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    (data.group(i) == groups.blue_label ? groups.blue : groups.red)
        .push_back(i);
  }
  const BalanceRatio achieved = BalanceOf(counts[0], counts[1]);
  if (!achieved.AtLeast(t)) {
    throw InfeasibleError(
        "fairlet decomposition infeasible: dataset balance " +
        std::to_string(achieved.numerator()) + "/" +
        std::to_string(achieved.denominator()) + " (" +
        std::to_string(achieved.value()) + ") is below required t = " +
        t.ToString() + " (" + std::to_string(t.value()) + ")");
  }
  return groups;
}

void AssignCenters(FairletDecomposition& decomposition, const Dataset& data,
                   uint64_t seed, CenterPolicy policy) {
  RandomStream stream(seed, "fairlets/centers");
  for (auto& fairlet : decomposition.fairlets) {
    if (policy == CenterPolicy::kMedoid) {
      fairlet.center = Medoid(data, fairlet.members);
    } else {
      fairlet.center = fairlet.members[stream.UniformIndex(fairlet.weight())];
    }
  }
}

void FillGamma(FairletDecomposition& decomposition, std::size_t n) {
  decomposition.gamma.assign(n, 0);
  for (std::size_t j = 0; j < decomposition.fairlets.size(); ++j) {
    for (std::size_t x : decomposition.fairlets[j].members) {
      decomposition.gamma[x] = j;
    }
  }
}

}  // namespace

FairletDecomposition VanillaDecompose(const Dataset& data,
                                      const ThresholdFM& t, uint64_t seed,
                                      CenterPolicy centers) {
  Groups groups = PrepareGroups(data, t);
  RandomStream stream(seed, "fairlets/vanilla");
  stream.Shuffle(groups.red);

  const std::size_t blues = groups.blue.size();
  const std::size_t reds = groups.red.size();
  FairletDecomposition decomposition;
  decomposition.threshold = t;
  decomposition.fairlets.reserve(blues);
  std::size_t next_red = 0;
  for (std::size_t i = 0; i < blues; ++i) {
    const std::size_t block = reds / blues + (i < reds % blues ? 1 : 0);
    Fairlet fairlet;
    fairlet.members.push_back(groups.blue[i]);
    for (std::size_t r = 0; r < block; ++r) {
      fairlet.members.push_back(groups.red[next_red++]);
    }
    std::sort(fairlet.members.begin(), fairlet.members.end());
    decomposition.fairlets.push_back(std::move(fairlet));
  }
  AssignCenters(decomposition, data, seed, centers);
  FillGamma(decomposition, data.size());
  return decomposition;
}

FairletDecomposition McfDecompose(const Dataset& data, const ThresholdFM& t,
                                  uint64_t seed, CenterPolicy centers) {
  const Groups groups = PrepareGroups(data, t);
  const long blues = static_cast<long>(groups.blue.size());
  const long reds = static_cast<long>(groups.red.size());
  const long m = t.m();

  // Every blue must take at least one red: the mandatory unit is placed as a
  // supply on the blue node (lower-bound transformation), the optional m - 1
  // units come from a shared source.
  FlowNetwork net;
  const std::size_t source = net.AddNode(reds - blues);
  std::vector<std::size_t> blue_nodes(blues);
  std::vector<std::size_t> red_nodes(reds);
  for (long b = 0; b < blues; ++b) blue_nodes[b] = net.AddNode(1);
  for (long r = 0; r < reds; ++r) red_nodes[r] = net.AddNode(0);
  const std::size_t sink = net.AddNode(-reds);
  if (m > 1) {
    for (long b = 0; b < blues; ++b) {
      net.AddArc(source, blue_nodes[b], m - 1, 0.0);
    }
  }
  std::vector<std::pair<long, long>> pair_of_arc;
  pair_of_arc.reserve(static_cast<std::size_t>(blues * reds));
  const std::size_t first_pair_arc = net.arcs.size();
  for (long b = 0; b < blues; ++b) {
    for (long r = 0; r < reds; ++r) {
      net.AddArc(blue_nodes[b], red_nodes[r], 1,
                 RowDistance(data, groups.blue[b], groups.red[r]));
      pair_of_arc.push_back({b, r});
    }
  }
  for (long r = 0; r < reds; ++r) net.AddArc(red_nodes[r], sink, 1, 0.0);

  FlowSolution flow;
  try {
    flow = SolveMinCostFlow(net);
  } catch (const InfeasibleError& e) {
    // PrepareGroups already guarantees r <= m * b, so this is a solver bug.
    throw Error(std::string("fairlet flow network unexpectedly infeasible: ") +
                e.what());
  }

  FairletDecomposition decomposition;
  decomposition.threshold = t;
  decomposition.fairlets.resize(blues);
  for (long b = 0; b < blues; ++b) {
    decomposition.fairlets[b].members.push_back(groups.blue[b]);
  }
  for (std::size_t a = 0; a < pair_of_arc.size(); ++a) {
    if (flow.flows[first_pair_arc + a] > 0) {
      const auto [b, r] = pair_of_arc[a];
      decomposition.fairlets[b].members.push_back(groups.red[r]);
    }
  }
  for (auto& fairlet : decomposition.fairlets) {
    std::sort(fairlet.members.begin(), fairlet.members.end());
  }
  AssignCenters(decomposition, data, seed, centers);
  FillGamma(decomposition, data.size());

  // The flow minimises star cost around each minority point, which bounds
  // but does not equal the center-based cost. Keep the cheaper of the two
  // groupings so the result never loses to the cost-agnostic one.
  FairletDecomposition vanilla = VanillaDecompose(data, t, seed, centers);
  if (FairletCost(vanilla, data) < FairletCost(decomposition, data)) {
    return vanilla;
  }
  return decomposition;
}

double FairletCost(const FairletDecomposition& decomposition,
                   const Dataset& data) {
  double cost = 0.0;
  for (const auto& fairlet : decomposition.fairlets) {
    for (std::size_t x : fairlet.members) {
      cost += RowDistance(data, x, fairlet.center);
    }
  }
  return cost;
}

ValidationReport Validate(const FairletDecomposition& decomposition,
                          const Dataset& data, const ThresholdFM& t) {
  ValidationReport report;
  auto& v = report.violations;
  const std::size_t n = data.size();
  std::vector<int> seen(n, 0);
  std::vector<std::size_t> owner(n, decomposition.fairlets.size());

  for (std::size_t j = 0; j < decomposition.fairlets.size(); ++j) {
    const auto& fairlet = decomposition.fairlets[j];
    const std::string name = "fairlet " + std::to_string(j);
    if (fairlet.members.empty()) {
      v.push_back(name + ": empty");
      continue;
    }
    bool in_range = true;
    for (std::size_t x : fairlet.members) {
      if (x >= n) {
        v.push_back(name + ": member " + std::to_string(x) +
                    " is not a row index");
        in_range = false;
        continue;
      }
      ++seen[x];
      owner[x] = j;
    }
    if (std::find(fairlet.members.begin(), fairlet.members.end(),
                  fairlet.center) == fairlet.members.end()) {
      v.push_back(name + ": center " + std::to_string(fairlet.center) +
                  " is not a member");
    }
    if (static_cast<long>(fairlet.weight()) > t.max_fairlet_size()) {
      v.push_back(name + ": size " + std::to_string(fairlet.weight()) +
                  " exceeds f + m = " + std::to_string(t.max_fairlet_size()));
    }
    if (in_range) {
      const BalanceRatio balance = SetBalance(data, fairlet.members);
      if (!balance.AtLeast(t)) {
        v.push_back(name + ": balance " + std::to_string(balance.numerator()) +
                    "/" + std::to_string(balance.denominator()) +
                    " below t = " + t.ToString());
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (seen[x] == 0) {
      v.push_back("row " + std::to_string(x) + ": in no fairlet");
    } else if (seen[x] > 1) {
      v.push_back("row " + std::to_string(x) + ": in " +
                  std::to_string(seen[x]) + " fairlets");
    }
  }
  if (decomposition.gamma.size() != n) {
    v.push_back("gamma has " + std::to_string(decomposition.gamma.size()) +
                " entries, expected " + std::to_string(n));
  } else {
    for (std::size_t x = 0; x < n; ++x) {
      if (seen[x] == 1 && decomposition.gamma[x] != owner[x]) {
        v.push_back("row " + std::to_string(x) + ": gamma says fairlet " +
                    std::to_string(decomposition.gamma[x]) +
                    ", member of fairlet " + std::to_string(owner[x]));
      }
    }
  }
  return report;
}

nlohmann::json DecompositionToJson(const FairletDecomposition& decomposition,
                                   const Dataset& data) {
  nlohmann::json out = nlohmann::json::array();
  const auto& ids = data.row_ids();
  for (std::size_t j = 0; j < decomposition.fairlets.size(); ++j) {
    const auto& fairlet = decomposition.fairlets[j];
    nlohmann::json members = nlohmann::json::array();
    for (std::size_t x : fairlet.members) members.push_back(ids[x]);
    out.push_back({{"fairlet_id", j},
                   {"center_row_id", ids[fairlet.center]},
                   {"member_row_ids", std::move(members)}});
  }
  return out;
}

FairletDecomposition DecompositionFromJson(const nlohmann::json& json,
                                           const Dataset& data,
                                           const ThresholdFM& t) {
  std::unordered_map<std::string, std::size_t> index;
  const auto& ids = data.row_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.emplace(ids[i], i).second) {
      throw DataError(DataErrorKind::kMissingColumn,
                      "row id '" + ids[i] + "' is not unique");
    }
  }
  auto lookup = [&](const std::string& id) {
    const auto it = index.find(id);
    if (it == index.end()) {
      throw DataError(DataErrorKind::kMissingValue,
                      "unknown row id '" + id + "' in decomposition");
    }
    return it->second;
  };
  if (!json.is_array()) {
    throw DataError(DataErrorKind::kIo, "decomposition must be a JSON array");
  }
  FairletDecomposition decomposition;
  decomposition.threshold = t;
  try {
    for (const auto& item : json) {
      Fairlet fairlet;
      for (const auto& id : item.at("member_row_ids")) {
        fairlet.members.push_back(lookup(id.get<std::string>()));
      }
      std::sort(fairlet.members.begin(), fairlet.members.end());
      fairlet.center = lookup(item.at("center_row_id").get<std::string>());
      decomposition.fairlets.push_back(std::move(fairlet));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(DataErrorKind::kIo,
                    std::string("malformed decomposition: ") + e.what());
  }
  decomposition.gamma.assign(data.size(), data.size());
  for (std::size_t j = 0; j < decomposition.fairlets.size(); ++j) {
    for (std::size_t x : decomposition.fairlets[j].members) {
      decomposition.gamma[x] = j;
    }
  }
  return decomposition;
}

}  // namespace faircap
