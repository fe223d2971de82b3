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

#ifndef FAIRCAP_MIN_COST_FLOW_H_
#define FAIRCAP_MIN_COST_FLOW_H_

#include <cstddef>
#include <vector>

namespace faircap {

struct FlowArc {
  std::size_t from;
  std::size_t to;
  long capacity;
  double cost;
};

// Directed network with integral capacities and node supplies (positive =
// source, negative = demand). Supplies must sum to zero.
struct FlowNetwork {
  std::vector<long> supplies;
  std::vector<FlowArc> arcs;

  std::size_t AddNode(long supply = 0) {
    supplies.push_back(supply);
    return supplies.size() - 1;
  }
  std::size_t AddArc(std::size_t from, std::size_t to, long capacity,
                     double cost) {
    arcs.push_back({from, to, capacity, cost});
    return arcs.size() - 1;
  }
  std::size_t node_count() const { return supplies.size(); }
};

struct FlowSolution {
  std::vector<long> flows;  // one per arc, same order as FlowNetwork::arcs
  double cost = 0.0;
};

// Successive shortest augmenting paths with Johnson potentials. Integral
// supplies and capacities give an integral optimum. Throws InfeasibleError
// when the supplies cannot be routed and ContractViolation on malformed input
// (unbalanced supplies, negative capacities, negative-cost cycles).
FlowSolution SolveMinCostFlow(const FlowNetwork& network);

}  // namespace faircap

#endif  // FAIRCAP_MIN_COST_FLOW_H_
