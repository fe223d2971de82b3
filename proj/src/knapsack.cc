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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "faircap/capclust.h"
#include "faircap/error.h"

namespace faircap {

std::vector<std::size_t> KnapsackSelect(const KnapsackInstance& instance) {
  const auto& values = instance.values;
  const auto& weights = instance.weights;
  if (values.size() != weights.size()) {
    throw ContractViolation("knapsack: values and weights differ in length");
  }
  if (instance.capacity < 0) {
    throw ContractViolation("knapsack: negative capacity");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] < 1) throw ContractViolation("knapsack: weight below 1");
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw ContractViolation("knapsack: value must be finite and >= 0");
    }
  }

  const std::size_t items = values.size();
  const std::size_t cap = static_cast<std::size_t>(instance.capacity);
  const std::size_t width = cap + 1;
  constexpr double kNone = -std::numeric_limits<double>::infinity();

  // best[i][w]: max value of a subset of items i.. with total weight exactly
  // w. Suffix tables let the forward reconstruction favour low indices.
  std::vector<double> best((items + 1) * width, kNone);
  auto at = [&](std::size_t i, std::size_t w) -> double& {
    return best[i * width + w];
  };
  at(items, 0) = 0.0;
  for (std::size_t i = items; i-- > 0;) {
    const std::size_t wi = static_cast<std::size_t>(weights[i]);
    for (std::size_t w = 0; w < width; ++w) {
      double v = at(i + 1, w);
      if (w >= wi && at(i + 1, w - wi) != kNone) {
        v = std::max(v, values[i] + at(i + 1, w - wi));
      }
      at(i, w) = v;
    }
  }

  std::size_t target = 0;
  for (std::size_t w = 1; w < width; ++w) {
    if (at(0, w) > at(0, target)) target = w;
  }

  std::vector<std::size_t> chosen;
  std::size_t w = target;
  for (std::size_t i = 0; i < items; ++i) {
    const std::size_t wi = static_cast<std::size_t>(weights[i]);
    if (w >= wi && at(i + 1, w - wi) != kNone &&
        values[i] + at(i + 1, w - wi) == at(i, w)) {
      chosen.push_back(i);
      w -= wi;
    }
  }
  return chosen;
}

double DecayValue(double distance, double lambda) {
  if (!(lambda > 0.0)) throw ContractViolation("decay: lambda must be > 0");
  if (!(distance >= 0.0)) throw ContractViolation("decay: distance must be >= 0");
  return std::exp(-distance / lambda);
}

long CapacityThreshold(long n, long k, double epsilon) {
  if (n < 1 || k < 1) throw ContractViolation("capacity: n and k must be >= 1");
  if (!(epsilon >= 1.0)) throw ContractViolation("capacity: epsilon must be >= 1");
  // The tolerance absorbs representation error in epsilon, e.g. 300 * 1.2 / 3
  // evaluating a hair above 120.
  const double raw = static_cast<double>(n) * epsilon / static_cast<double>(k);
  return static_cast<long>(std::ceil(raw - 1e-9));
}

}  // namespace faircap
