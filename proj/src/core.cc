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

#include "faircap/core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "faircap/error.h"

namespace faircap {

const char* DataErrorKindName(DataErrorKind kind) {
  switch (kind) {
    case DataErrorKind::kIo:
      return "io error";
    case DataErrorKind::kEmptyFile:
      return "empty file";
    case DataErrorKind::kMissingColumn:
      return "missing column";
    case DataErrorKind::kProtectedValues:
      return "protected attribute not binary";
    case DataErrorKind::kUnparseableNumber:
      return "unparseable number";
    case DataErrorKind::kMissingValue:
      return "missing value";
    case DataErrorKind::kRaggedRow:
      return "ragged row";
    case DataErrorKind::kSingleGroup:
      return "single protected group";
  }
  return "data error";
}

ThresholdFM ThresholdFM::Make(long f, long m) {
  if (f <= 0 || m <= 0 || f > m) {
    throw ContractViolation("threshold must satisfy 0 < f <= m, got " +
                            std::to_string(f) + "/" + std::to_string(m));
  }
  const long g = std::gcd(f, m);
  return ThresholdFM(f / g, m / g);
}

ThresholdFM ThresholdFM::Parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used_f = 0;
      std::size_t used_m = 0;
      const std::string fs = text.substr(0, slash);
      const std::string ms = text.substr(slash + 1);
      const long f = std::stol(fs, &used_f);
      const long m = std::stol(ms, &used_m);
      if (used_f != fs.size() || used_m != ms.size()) {
        throw ContractViolation("bad threshold '" + text + "'");
      }
      return Make(f, m);
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !(v > 0.0) || v > 1.0) {
      throw ContractViolation("threshold must be in (0, 1], got '" + text +
                              "'");
    }
    long best_f = 1;
    long best_m = 1;
    double best_err = std::numeric_limits<double>::infinity();
    for (long m = 1; m <= 1000; ++m) {
      const long f = std::lround(v * m);
      if (f < 1 || f > m) continue;
      const double err = std::abs(static_cast<double>(f) / m - v);
      if (err < best_err - 1e-15) {
        best_err = err;
        best_f = f;
        best_m = m;
      }
    }
    return Make(best_f, best_m);
  } catch (const std::logic_error&) {
    throw ContractViolation("bad threshold '" + text + "'");
  }
}

std::string ThresholdFM::ToString() const {
  return std::to_string(f_) + "/" + std::to_string(m_);
}

BalanceRatio::BalanceRatio(std::size_t numerator, std::size_t denominator)
    : numerator_(numerator), denominator_(denominator) {}

double BalanceRatio::value() const {
  if (numerator_ == 0 || denominator_ == 0) return 0.0;
  return static_cast<double>(numerator_) / static_cast<double>(denominator_);
}

bool BalanceRatio::AtLeast(const ThresholdFM& t) const {
  if (numerator_ == 0 || denominator_ == 0) return false;
  return static_cast<unsigned long long>(numerator_) * t.m() >=
         static_cast<unsigned long long>(denominator_) * t.f();
}

std::strong_ordering operator<=>(const BalanceRatio& a, const BalanceRatio& b) {
  // Zero-valued ratios compare as 0/1.
  const auto num = [](const BalanceRatio& r) -> unsigned long long {
    return r.denominator_ == 0 ? 0 : r.numerator_;
  };
  const auto den = [](const BalanceRatio& r) -> unsigned long long {
    return (r.denominator_ == 0 || r.numerator_ == 0) ? 1 : r.denominator_;
  };
  return num(a) * den(b) <=> num(b) * den(a);
}

BalanceRatio BalanceOf(std::size_t count0, std::size_t count1) {
  return BalanceRatio(std::min(count0, count1), std::max(count0, count1));
}

Dataset::Dataset(std::vector<double> features, std::size_t dim,
                 std::vector<int> protected_labels,
                 std::vector<std::string> row_ids,
                 std::vector<std::string> feature_names)
    : features_(std::move(features)),
      dim_(dim),
      labels_(std::move(protected_labels)),
      row_ids_(std::move(row_ids)),
      feature_names_(std::move(feature_names)) {
  if (labels_.empty()) throw ContractViolation("dataset must have n >= 1 rows");
  if (dim_ == 0) throw ContractViolation("dataset must have d >= 1 features");
  if (features_.size() != labels_.size() * dim_) {
    throw ContractViolation("feature matrix size does not match n x d");
  }
  for (double v : features_) {
    if (!std::isfinite(v)) throw ContractViolation("non-finite feature value");
  }
  for (int label : labels_) {
    if (label != 0 && label != 1) {
      throw ContractViolation("protected labels must be 0 or 1");
    }
  }
  if (row_ids_.empty()) {
    row_ids_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      row_ids_.push_back(std::to_string(i));
    }
  } else if (row_ids_.size() != labels_.size()) {
    throw ContractViolation("row_ids length does not match n");
  }
  if (feature_names_.empty()) {
    for (std::size_t j = 0; j < dim_; ++j) {
      feature_names_.push_back("x" + std::to_string(j));
    }
  } else if (feature_names_.size() != dim_) {
    throw ContractViolation("feature_names length does not match d");
  }
}

std::array<std::size_t, 2> Dataset::GroupCounts() const {
  std::array<std::size_t, 2> counts{0, 0};
  for (int label : labels_) ++counts[label];
  return counts;
}

double Distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ContractViolation("distance: dimension mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

BalanceRatio SetBalance(const Dataset& data,
                        std::span<const std::size_t> members) {
  std::size_t counts[2] = {0, 0};
  for (std::size_t i : members) ++counts[data.group(i)];
  return BalanceOf(counts[0], counts[1]);
}

std::size_t Medoid(const Dataset& data, std::span<const std::size_t> members) {
  if (members.empty()) throw ContractViolation("medoid of an empty set");
  std::size_t best = members[0];
  double best_sum = std::numeric_limits<double>::infinity();
  for (std::size_t candidate : members) {
    double sum = 0.0;
    for (std::size_t other : members) {
      sum += RowDistance(data, candidate, other);
    }
    if (sum < best_sum || (sum == best_sum && candidate < best)) {
      best_sum = sum;
      best = candidate;
    }
  }
  return best;
}

Clustering::Clustering(std::vector<int> assignment,
                       std::vector<std::size_t> representatives, int k)
    : assignment_(std::move(assignment)),
      representatives_(std::move(representatives)),
      k_(k) {
  if (k_ <= 0) throw ContractViolation("clustering needs k >= 1");
  if (representatives_.size() != static_cast<std::size_t>(k_)) {
    throw ContractViolation("clustering needs one representative per cluster");
  }
  std::vector<std::size_t> sizes(k_, 0);
  for (int c : assignment_) {
    if (c < 0 || c >= k_) {
      throw ContractViolation("cluster id " + std::to_string(c) +
                              " outside [0, k)");
    }
    ++sizes[c];
  }
  for (int c = 0; c < k_; ++c) {
    if (sizes[c] == 0) {
      throw ContractViolation("cluster " + std::to_string(c) + " is empty");
    }
    const std::size_t rep = representatives_[c];
    if (rep >= assignment_.size() || assignment_[rep] != c) {
      throw ContractViolation("representative of cluster " +
                              std::to_string(c) + " is not a member");
    }
  }
}

Clustering Clustering::FromAssignment(std::vector<int> assignment, int k,
                                      const Dataset& data) {
  if (assignment.size() != data.size()) {
    throw ContractViolation("assignment length does not match dataset size");
  }
  if (k <= 0) throw ContractViolation("clustering needs k >= 1");
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int c = assignment[i];
    if (c < 0 || c >= k) {
      throw ContractViolation("cluster id " + std::to_string(c) +
                              " outside [0, k)");
    }
    members[c].push_back(i);
  }
  std::vector<std::size_t> reps(k);
  for (int c = 0; c < k; ++c) {
    if (members[c].empty()) {
      throw ContractViolation("cluster " + std::to_string(c) + " is empty");
    }
    reps[c] = Medoid(data, members[c]);
  }
  return Clustering(std::move(assignment), std::move(reps), k);
}

std::vector<std::size_t> Clustering::Sizes() const {
  std::vector<std::size_t> sizes(k_, 0);
  for (int c : assignment_) ++sizes[c];
  return sizes;
}

std::vector<std::vector<std::size_t>> Clustering::Members() const {
  std::vector<std::vector<std::size_t>> members(k_);
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    members[assignment_[i]].push_back(i);
  }
  return members;
}

BalanceRatio ClusteringBalance(const Clustering& clustering,
                               const Dataset& data) {
  std::vector<std::array<std::size_t, 2>> counts(clustering.k(), {0, 0});
  const auto& assignment = clustering.assignment();
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    ++counts[assignment[i]][data.group(i)];
  }
  BalanceRatio worst = BalanceOf(counts[0][0], counts[0][1]);
  for (const auto& c : counts) worst = std::min(worst, BalanceOf(c[0], c[1]));
  return worst;
}

double ClusteringCost(const Clustering& clustering, const Dataset& data) {
  const auto& assignment = clustering.assignment();
  const auto& reps = clustering.representatives();
  double cost = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    cost += RowDistance(data, i, reps[assignment[i]]);
  }
  return cost;
}

Clustering ComposeAssignment(std::span<const int> delta,
                             const FairletDecomposition& decomposition,
                             const Dataset& data, int k) {
  if (delta.size() != decomposition.fairlets.size()) {
    throw ContractViolation("delta covers " + std::to_string(delta.size()) +
                            " fairlets, decomposition has " +
                            std::to_string(decomposition.fairlets.size()));
  }
  if (decomposition.gamma.size() != data.size()) {
    throw ContractViolation("gamma does not cover every row");
  }
  std::vector<int> assignment(data.size());
  for (std::size_t x = 0; x < data.size(); ++x) {
    const std::size_t j = decomposition.gamma[x];
    if (j >= delta.size()) {
      throw ContractViolation("gamma maps row " + std::to_string(x) +
                              " to unknown fairlet");
    }
    assignment[x] = delta[j];
  }
  return Clustering::FromAssignment(std::move(assignment), k, data);
}

}  // namespace faircap
