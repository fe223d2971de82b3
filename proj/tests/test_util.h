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

#ifndef FAIRCAP_TESTS_TEST_UTIL_H_
#define FAIRCAP_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <vector>

#include "faircap/capclust.h"
#include "faircap/core.h"
#include "faircap/random.h"

namespace faircap::testing {

// Uniform points in [0, 1]^dim; `ones` rows (chosen at random) get label 1.
inline Dataset RandomDataset(std::size_t n, std::size_t ones, std::size_t dim,
                             uint64_t seed) {
  RandomStream rng(seed, "test/dataset");
  std::vector<double> features(n * dim);
  for (double& v : features) v = rng.Uniform01();
  std::vector<int> labels(n, 0);
  std::vector<std::size_t> order = rng.SampleWithoutReplacement(n, ones);
  for (std::size_t i : order) labels[i] = 1;
  return Dataset(std::move(features), dim, std::move(labels));
}

// Rows at given 1-d coordinates with given labels.
inline Dataset LineDataset(const std::vector<double>& xs,
                           const std::vector<int>& labels) {
  return Dataset(xs, 1, labels);
}

inline std::vector<WeightedPoint> LinePoints(const std::vector<double>& xs,
                                             const std::vector<long>& weights) {
  std::vector<WeightedPoint> points;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    points.push_back({{xs[i]}, weights.empty() ? 1 : weights[i], i});
  }
  return points;
}

// Naive Euclidean distance accumulated in long double.
inline double NaiveDistance(const std::vector<double>& a,
                            const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long double d = static_cast<long double>(a[i]) - b[i];
    s += d * d;
  }
  return static_cast<double>(std::sqrt(s));
}

}  // namespace faircap::testing

#endif  // FAIRCAP_TESTS_TEST_UTIL_H_
