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

#ifndef FAIRCAP_RANDOM_H_
#define FAIRCAP_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace faircap {

// A named pseudo-random stream. Every stochastic step of the library draws
// from a stream derived from the run seed and a stage name, so adding draws in
// one stage never perturbs another. Streams are reproducible bit-for-bit on a
// given platform.
class RandomStream {
 public:
  RandomStream(uint64_t seed, std::string_view name);

  // Child stream; deterministic in (this stream's key, name).
  RandomStream Split(std::string_view name) const;

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, n). Requires n > 0.
  std::size_t UniformIndex(std::size_t n);

  double Uniform01();
  double Normal(double mean, double stddev);

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = UniformIndex(i);
      std::swap(values[i - 1], values[j]);
    }
  }

  // k distinct indices from [0, n), in draw order.
  std::vector<std::size_t> SampleWithoutReplacement(std::size_t n,
                                                    std::size_t k);

  uint64_t key() const { return key_; }

 private:
  explicit RandomStream(uint64_t key);

  uint64_t key_;
  std::mt19937_64 engine_;
};

uint64_t SplitMix64(uint64_t x);

}  // namespace faircap

#endif  // FAIRCAP_RANDOM_H_
