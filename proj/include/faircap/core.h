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

#ifndef FAIRCAP_CORE_H_
#define FAIRCAP_CORE_H_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace faircap {

// Balance threshold t = f/m with gcd(f, m) = 1 and 1 <= f <= m. A fairlet
// under this threshold holds at most f + m points.
class ThresholdFM {
 public:
  // Reduces the fraction; throws ContractViolation unless 0 < f <= m.
  static ThresholdFM Make(long f, long m);
  // Accepts "f/m" or a decimal such as "0.5" (converted to the nearest
  // fraction with denominator <= 1000).
  static ThresholdFM Parse(const std::string& text);

  long f() const { return f_; }
  long m() const { return m_; }
  double value() const { return static_cast<double>(f_) / m_; }
  long max_fairlet_size() const { return f_ + m_; }
  std::string ToString() const;

  friend bool operator==(const ThresholdFM&, const ThresholdFM&) = default;

 private:
  ThresholdFM(long f, long m) : f_(f), m_(m) {}
  long f_;
  long m_;
};

// Balance of a two-group set: min(a/b, b/a), 0 when either group is empty.
// Stored as the exact fraction smaller_count / larger_count.
class BalanceRatio {
 public:
  BalanceRatio() = default;
  BalanceRatio(std::size_t numerator, std::size_t denominator);

  std::size_t numerator() const { return numerator_; }
  std::size_t denominator() const { return denominator_; }
  double value() const;

  bool AtLeast(const ThresholdFM& t) const;

  friend std::strong_ordering operator<=>(const BalanceRatio& a,
                                          const BalanceRatio& b);
  friend bool operator==(const BalanceRatio& a, const BalanceRatio& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  std::size_t numerator_ = 0;
  std::size_t denominator_ = 0;
};

BalanceRatio BalanceOf(std::size_t count0, std::size_t count1);

// Immutable feature matrix (row-major, n x d) plus one binary protected label
// per row.
class Dataset {
 public:
  Dataset(std::vector<double> features, std::size_t dim,
          std::vector<int> protected_labels,
          std::vector<std::string> row_ids = {},
          std::vector<std::string> feature_names = {});

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * dim_, dim_};
  }
  int group(std::size_t i) const { return labels_[i]; }

  const std::vector<double>& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }

  // {count of label 0, count of label 1}.
  std::array<std::size_t, 2> GroupCounts() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<double> features_;
  std::size_t dim_;
  std::vector<int> labels_;
  std::vector<std::string> row_ids_;
  std::vector<std::string> feature_names_;
};

// Euclidean distance. Throws ContractViolation on a dimension mismatch.
double Distance(std::span<const double> a, std::span<const double> b);

inline double RowDistance(const Dataset& data, std::size_t i, std::size_t j) {
  return Distance(data.row(i), data.row(j));
}

BalanceRatio SetBalance(const Dataset& data,
                        std::span<const std::size_t> members);

// Member of `members` minimising the summed distance to the others. Ties go
// to the smallest row index.
std::size_t Medoid(const Dataset& data, std::span<const std::size_t> members);

struct Fairlet {
  std::vector<std::size_t> members;  // row indices, ascending
  std::size_t center = 0;            // one of members

  std::size_t weight() const { return members.size(); }
};

struct FairletDecomposition {
  std::vector<Fairlet> fairlets;
  std::vector<std::size_t> gamma;  // row index -> fairlet index
  ThresholdFM threshold = ThresholdFM::Make(1, 1);
};

// Hard k-clustering of the rows of a dataset. Every cluster id in [0, k) has
// at least one member; construction fails otherwise.
class Clustering {
 public:
  Clustering(std::vector<int> assignment, std::vector<std::size_t> representatives,
             int k);

  // Representatives are the cluster medoids.
  static Clustering FromAssignment(std::vector<int> assignment, int k,
                                   const Dataset& data);

  int k() const { return k_; }
  const std::vector<int>& assignment() const { return assignment_; }
  const std::vector<std::size_t>& representatives() const {
    return representatives_;
  }

  std::vector<std::size_t> Sizes() const;
  std::vector<std::vector<std::size_t>> Members() const;

 private:
  std::vector<int> assignment_;
  std::vector<std::size_t> representatives_;
  int k_;
};

// Minimum cluster balance over all clusters.
BalanceRatio ClusteringBalance(const Clustering& clustering,
                               const Dataset& data);

// Sum over clusters of member-to-representative distances.
double ClusteringCost(const Clustering& clustering, const Dataset& data);

// Lifts a fairlet-level assignment to rows: row x goes to
// delta[gamma[x]]. `delta` must cover every fairlet with ids in [0, k).
Clustering ComposeAssignment(std::span<const int> delta,
                             const FairletDecomposition& decomposition,
                             const Dataset& data, int k);

struct Params {
  int k = 2;
  ThresholdFM t = ThresholdFM::Make(1, 2);
  double epsilon = 1.01;
  double lambda = 0.3;
  uint64_t seed = 0;
};

}  // namespace faircap

#endif  // FAIRCAP_CORE_H_
