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

#include "faircap/min_cost_flow.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

#include "faircap/error.h"

namespace faircap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ResidualEdge {
  std::size_t to;
  std::size_t reverse;  // index of the paired edge in graph[to]
  long capacity;
  double cost;
};

class Residual {
 public:
  explicit Residual(std::size_t nodes) : graph_(nodes) {}

  // Returns (node, position) of the forward edge.
  std::pair<std::size_t, std::size_t> Add(std::size_t from, std::size_t to,
                                          long capacity, double cost) {
    const std::size_t fwd = graph_[from].size();
    const std::size_t rev = graph_[to].size() + (from == to ? 1 : 0);
    graph_[from].push_back({to, rev, capacity, cost});
    graph_[to].push_back({from, fwd, 0, -cost});
    return {from, fwd};
  }

  std::vector<std::vector<ResidualEdge>>& graph() { return graph_; }

 private:
  std::vector<std::vector<ResidualEdge>> graph_;
};

}  // namespace

FlowSolution SolveMinCostFlow(const FlowNetwork& network) {
  const std::size_t n = network.node_count();
  long total = 0;
  long positive = 0;
  for (long s : network.supplies) {
    total += s;
    if (s > 0) positive += s;
  }
  if (total != 0) {
    throw ContractViolation("flow supplies sum to " + std::to_string(total) +
                            ", expected 0");
  }
  for (const auto& arc : network.arcs) {
    if (arc.capacity < 0) throw ContractViolation("negative arc capacity");
    if (arc.from >= n || arc.to >= n) {
      throw ContractViolation("arc endpoint out of range");
    }
  }

  const std::size_t source = n;
  const std::size_t sink = n + 1;
  Residual residual(n + 2);
  std::vector<std::pair<std::size_t, std::size_t>> handles;
  handles.reserve(network.arcs.size());
  for (const auto& arc : network.arcs) {
    handles.push_back(residual.Add(arc.from, arc.to, arc.capacity, arc.cost));
  }
  for (std::size_t v = 0; v < n; ++v) {
    const long s = network.supplies[v];
    if (s > 0) residual.Add(source, v, s, 0.0);
    if (s < 0) residual.Add(v, sink, -s, 0.0);
  }
  auto& graph = residual.graph();
  const std::size_t nodes = n + 2;

  // Initial potentials by Bellman-Ford over edges with residual capacity, so
  // negative arc costs are allowed as long as there is no negative cycle.
  std::vector<double> potential(nodes, 0.0);
  for (std::size_t round = 0;; ++round) {
    bool changed = false;
    for (std::size_t u = 0; u < nodes; ++u) {
      for (const auto& e : graph[u]) {
        if (e.capacity > 0 && potential[u] + e.cost < potential[e.to] - 1e-12) {
          potential[e.to] = potential[u] + e.cost;
          changed = true;
        }
      }
    }
    if (!changed) break;
    if (round + 1 >= nodes) {
      throw ContractViolation("flow network contains a negative-cost cycle");
    }
  }

  long sent = 0;
  std::vector<double> dist(nodes);
  std::vector<std::size_t> prev_node(nodes);
  std::vector<std::size_t> prev_edge(nodes);
  using Entry = std::pair<double, std::size_t>;
  while (sent < positive) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[source] = 0.0;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0.0, source});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (std::size_t i = 0; i < graph[u].size(); ++i) {
        const auto& e = graph[u][i];
        if (e.capacity <= 0) continue;
        // Reduced costs are nonnegative up to rounding.
        const double reduced =
            std::max(0.0, e.cost + potential[u] - potential[e.to]);
        const double nd = d + reduced;
        if (nd < dist[e.to]) {
          dist[e.to] = nd;
          prev_node[e.to] = u;
          prev_edge[e.to] = i;
          heap.push({nd, e.to});
        }
      }
    }
    if (dist[sink] == kInf) {
      throw InfeasibleError("flow network infeasible: routed " +
                            std::to_string(sent) + " of " +
                            std::to_string(positive) + " supply units");
    }
    for (std::size_t v = 0; v < nodes; ++v) {
      if (dist[v] < kInf) potential[v] += dist[v];
    }
    long push = positive - sent;
    for (std::size_t v = sink; v != source; v = prev_node[v]) {
      push = std::min(push, graph[prev_node[v]][prev_edge[v]].capacity);
    }
    for (std::size_t v = sink; v != source; v = prev_node[v]) {
      auto& e = graph[prev_node[v]][prev_edge[v]];
      e.capacity -= push;
      graph[v][e.reverse].capacity += push;
    }
    sent += push;
  }

  FlowSolution solution;
  solution.flows.resize(network.arcs.size());
  for (std::size_t a = 0; a < network.arcs.size(); ++a) {
    const auto [u, i] = handles[a];
    const long flow = network.arcs[a].capacity - graph[u][i].capacity;
    solution.flows[a] = flow;
    solution.cost += static_cast<double>(flow) * network.arcs[a].cost;
  }
  return solution;
}

}  // namespace faircap
