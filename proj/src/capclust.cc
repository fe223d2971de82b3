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

#include "faircap/capclust.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "faircap/error.h"
#include "faircap/random.h"

namespace faircap {
namespace {

constexpr std::size_t kNoPartner = std::numeric_limits<std::size_t>::max();
constexpr int kInitAttempts = 50;

void CheckCommon(std::span<const WeightedPoint> points, int k, long q) {
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (q < 1) throw ContractViolation("capacity q must be >= 1");
  if (points.size() < static_cast<std::size_t>(k)) {
    throw ContractViolation("need at least k = " + std::to_string(k) +
                            " fairlets, got " + std::to_string(points.size()));
  }
  long total = 0;
  for (const auto& p : points) {
    if (p.weight < 1) throw ContractViolation("fairlet weight must be >= 1");
    if (p.weight > q) {
      throw InfeasibleError("fairlet of weight " + std::to_string(p.weight) +
                            " exceeds capacity q = " + std::to_string(q));
    }
    total += p.weight;
  }
  if (total > static_cast<long>(k) * q) {
    throw InfeasibleError("total weight " + std::to_string(total) +
                          " exceeds k * q = " + std::to_string(k * q) +
                          "; increase epsilon");
  }
}

// Renumbers cluster labels by smallest member index.
FairletAssignment Canonicalize(const std::vector<std::size_t>& label, int k,
                               std::span<const WeightedPoint> points) {
  std::vector<int> id_of(points.size(), -1);
  FairletAssignment out;
  out.k = k;
  out.delta.resize(points.size());
  out.cluster_weights.assign(k, 0);
  int next = 0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    int& id = id_of[label[j]];
    if (id < 0) id = next++;
    out.delta[j] = id;
    out.cluster_weights[id] += points[j].weight;
  }
  return out;
}

}  // namespace

std::vector<WeightedPoint> MakeWeightedPoints(
    const FairletDecomposition& decomposition, const Dataset& data) {
  std::vector<WeightedPoint> points;
  points.reserve(decomposition.fairlets.size());
  for (std::size_t j = 0; j < decomposition.fairlets.size(); ++j) {
    const auto& fairlet = decomposition.fairlets[j];
    const auto row = data.row(fairlet.center);
    points.push_back({std::vector<double>(row.begin(), row.end()),
                      static_cast<long>(fairlet.weight()), j});
  }
  return points;
}

std::string TraceToJsonLines(const Trace& trace) {
  std::string out;
  for (const auto& e : trace) {
    nlohmann::json line = {
        {"iteration", e.iteration}, {"event", e.event}, {"cost", e.cost}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

double WeightedMedoidCost(std::span<const WeightedPoint> points,
                          const FairletAssignment& assignment) {
  double cost = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto& medoid = points[assignment.medoids[assignment.delta[j]]];
    cost += static_cast<double>(points[j].weight) *
            Distance(points[j].position, medoid.position);
  }
  return cost;
}

// ---------------------------------------------------------------------------
// Hierarchical

FairletAssignment HierarchicalFairCapacitated(
    std::span<const WeightedPoint> points, int k, long q, Trace* trace) {
  CheckCommon(points, k, q);
  const std::size_t l = points.size();

  struct Cluster {
    std::vector<double> centroid;
    long weight;
    bool alive;
  };
  std::vector<Cluster> clusters(l);
  for (std::size_t j = 0; j < l; ++j) {
    clusters[j] = {points[j].position, points[j].weight, true};
  }
  std::vector<std::size_t> label(l);
  std::iota(label.begin(), label.end(), std::size_t{0});

  // Pair ordering: distance, then (smaller id, larger id).
  using Key = std::tuple<double, std::size_t, std::size_t>;
  auto key = [&](std::size_t a, std::size_t b) {
    return Key{Distance(clusters[a].centroid, clusters[b].centroid),
               std::min(a, b), std::max(a, b)};
  };
  auto fits = [&](std::size_t a, std::size_t b) {
    return clusters[a].weight + clusters[b].weight <= q;
  };

  // nearest[a]: closest capacity-feasible partner of a, or kNoPartner.
  std::vector<std::size_t> nearest(l, kNoPartner);
  std::vector<Key> nearest_key(l);
  auto refresh = [&](std::size_t a) {
    nearest[a] = kNoPartner;
    for (std::size_t b = 0; b < l; ++b) {
      if (b == a || !clusters[b].alive || !fits(a, b)) continue;
      Key kb = key(a, b);
      if (nearest[a] == kNoPartner || kb < nearest_key[a]) {
        nearest[a] = b;
        nearest_key[a] = kb;
      }
    }
  };
  for (std::size_t a = 0; a < l; ++a) refresh(a);

  std::size_t remaining = l;
  int iteration = 0;
  while (remaining > static_cast<std::size_t>(k)) {
    std::size_t best = kNoPartner;
    for (std::size_t a = 0; a < l; ++a) {
      if (!clusters[a].alive || nearest[a] == kNoPartner) continue;
      if (best == kNoPartner || nearest_key[a] < nearest_key[best]) best = a;
    }
    if (best == kNoPartner) {
      throw InfeasibleError(
          "hierarchical merging deadlocked with " + std::to_string(remaining) +
          " clusters left (k = " + std::to_string(k) +
          "): no pair fits within q = " + std::to_string(q) +
          "; increase epsilon");
    }
    const auto [dist, a, b] = nearest_key[best];
    Cluster& into = clusters[a];
    Cluster& from = clusters[b];
    const double wa = static_cast<double>(into.weight);
    const double wb = static_cast<double>(from.weight);
    for (std::size_t i = 0; i < into.centroid.size(); ++i) {
      into.centroid[i] = (wa * into.centroid[i] + wb * from.centroid[i]) /
                         (wa + wb);
    }
    into.weight += from.weight;
    from.alive = false;
    for (auto& lab : label) {
      if (lab == b) lab = a;
    }
    --remaining;
    if (trace) trace->push_back({++iteration, "merge", dist});

    refresh(a);
    nearest[b] = kNoPartner;
    for (std::size_t c = 0; c < l; ++c) {
      if (c == a || !clusters[c].alive) continue;
      if (nearest[c] == a || nearest[c] == b) {
        refresh(c);
      } else if (fits(c, a)) {
        Key kc = key(c, a);
        if (nearest[c] == kNoPartner || kc < nearest_key[c]) {
          nearest[c] = a;
          nearest_key[c] = kc;
        }
      }
    }
  }
  return Canonicalize(label, k, points);
}

// ---------------------------------------------------------------------------
// k-medoids with knapsack assignment

namespace {

class KnapsackAssigner {
 public:
  KnapsackAssigner(std::span<const WeightedPoint> points, long q,
                   double lambda)
      : points_(points), q_(q), lambda_(lambda), l_(points.size()) {
    distance_.resize(l_ * l_);
    for (std::size_t i = 0; i < l_; ++i) {
      for (std::size_t j = i; j < l_; ++j) {
        const double d = Distance(points[i].position, points[j].position);
        distance_[i * l_ + j] = d;
        distance_[j * l_ + i] = d;
      }
    }
  }

  double distance(std::size_t i, std::size_t j) const {
    return distance_[i * l_ + j];
  }

  // `medoids` must be ascending. Returns nullopt when some point cannot be
  // placed without exceeding q.
  std::optional<FairletAssignment> Assign(
      const std::vector<std::size_t>& medoids) const {
    const int k = static_cast<int>(medoids.size());
    FairletAssignment out;
    out.k = k;
    out.medoids = medoids;
    out.delta.assign(l_, -1);
    out.cluster_weights.assign(k, 0);

    // Each medoid's own fairlet anchors its cluster.
    for (int c = 0; c < k; ++c) {
      out.delta[medoids[c]] = c;
      out.cluster_weights[c] = points_[medoids[c]].weight;
    }

    KnapsackInstance instance;
    std::vector<std::size_t> candidates;
    for (int c = 0; c < k; ++c) {
      candidates.clear();
      instance.values.clear();
      instance.weights.clear();
      for (std::size_t j = 0; j < l_; ++j) {
        if (out.delta[j] >= 0) continue;
        candidates.push_back(j);
        instance.values.push_back(
            DecayValue(distance(j, medoids[c]), lambda_));
        instance.weights.push_back(points_[j].weight);
      }
      if (candidates.empty()) break;
      instance.capacity = q_ - out.cluster_weights[c];
      for (std::size_t pick : KnapsackSelect(instance)) {
        const std::size_t j = candidates[pick];
        out.delta[j] = c;
        out.cluster_weights[c] += points_[j].weight;
      }
    }

    // Leftovers, heaviest first, go to the nearest medoid with room.
    std::vector<std::size_t> leftovers;
    for (std::size_t j = 0; j < l_; ++j) {
      if (out.delta[j] < 0) leftovers.push_back(j);
    }
    std::stable_sort(leftovers.begin(), leftovers.end(),
                     [&](std::size_t a, std::size_t b) {
                       return points_[a].weight > points_[b].weight;
                     });
    for (std::size_t j : leftovers) {
      int target = -1;
      for (int c = 0; c < k; ++c) {
        if (out.cluster_weights[c] + points_[j].weight > q_) continue;
        if (target < 0 ||
            distance(j, medoids[c]) < distance(j, medoids[target])) {
          target = c;
        }
      }
      if (target < 0) return std::nullopt;
      out.delta[j] = target;
      out.cluster_weights[target] += points_[j].weight;
    }
    return out;
  }

  double Cost(const FairletAssignment& a) const {
    double cost = 0.0;
    for (std::size_t j = 0; j < l_; ++j) {
      cost += static_cast<double>(points_[j].weight) *
              distance(j, a.medoids[a.delta[j]]);
    }
    return cost;
  }

 private:
  std::span<const WeightedPoint> points_;
  long q_;
  double lambda_;
  std::size_t l_;
  std::vector<double> distance_;
};

}  // namespace

FairletAssignment KMedoidsFairCapacitated(std::span<const WeightedPoint> points,
                                          int k, long q, double lambda,
                                          uint64_t seed, Trace* trace) {
  CheckCommon(points, k, q);
  if (!(lambda > 0.0)) throw ContractViolation("lambda must be > 0");
  const std::size_t l = points.size();
  KnapsackAssigner assigner(points, q, lambda);

  // A sampled medoid set whose knapsack assignment strands a fairlet is
  // replaced by the next sample from the same stream.
  RandomStream stream(seed, "capclust/kmedoids-init");
  std::vector<std::size_t> medoids;
  std::optional<FairletAssignment> current;
  for (int attempt = 0; attempt < kInitAttempts && !current; ++attempt) {
    medoids = stream.SampleWithoutReplacement(l, k);
    std::sort(medoids.begin(), medoids.end());
    current = assigner.Assign(medoids);
  }
  if (!current) {
    throw InfeasibleError(
        "knapsack assignment left fairlets that fit no cluster within q = " +
        std::to_string(q) + " for " + std::to_string(kInitAttempts) +
        " initial medoid samples; increase epsilon");
  }
  double current_cost = assigner.Cost(*current);
  int iteration = 0;
  if (trace) trace->push_back({iteration, "assign", current_cost});

  std::vector<bool> is_medoid(l, false);
  std::vector<std::size_t> candidate;
  for (;;) {
    std::fill(is_medoid.begin(), is_medoid.end(), false);
    for (std::size_t s : medoids) is_medoid[s] = true;

    double best_cost = current_cost;
    std::optional<FairletAssignment> best;
    for (std::size_t slot = 0; slot < medoids.size(); ++slot) {
      for (std::size_t o = 0; o < l; ++o) {
        if (is_medoid[o]) continue;
        candidate = medoids;
        candidate[slot] = o;
        std::sort(candidate.begin(), candidate.end());
        std::optional<FairletAssignment> trial = assigner.Assign(candidate);
        if (!trial) continue;
        const double cost = assigner.Cost(*trial);
        if (cost < best_cost) {
          best_cost = cost;
          best = std::move(trial);
        }
      }
    }
    if (!best) break;
    current = std::move(best);
    medoids = current->medoids;
    current_cost = best_cost;
    if (trace) trace->push_back({++iteration, "swap", current_cost});
  }
  return *current;
}

}  // namespace faircap
