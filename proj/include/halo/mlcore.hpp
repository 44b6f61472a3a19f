// Copyright 2026 The Halo Authors.
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace halo::ml {

// Dense row-major observations x features, with an optional tag per row.
class PointMatrix {
 public:
  PointMatrix() = default;
  PointMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit PointMatrix(std::size_t cols) : cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<double>& data() const { return data_; }

  void add_row(std::span<const double> values, std::string tag = {});
  const std::vector<std::string>& tags() const { return tags_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  std::vector<std::string> tags_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

// Dense 0-based codes in order of first appearance.
std::vector<std::size_t> factorize(std::span<const std::string> labels);

// ---------------------------------------------------------------------------
// k-means

struct ClusterAssignment {
  std::vector<std::size_t> labels;
  std::size_t k = 0;
};

struct KMeansOptions {
  std::size_t restarts = 10;
  std::size_t max_iterations = 300;
  double tolerance = 1e-6;  // on centroid shift, relative to mean feature variance
};

struct KMeansResult {
  ClusterAssignment assignment;
  std::vector<double> centroids;  // k x cols
  double wcss = 0.0;
  std::size_t iterations = 0;
  std::size_t best_restart = 0;
  // WCSS after every Lloyd iteration of the winning restart.
  std::vector<double> wcss_trace;
};

// k-means++ seeding followed by Lloyd iterations; the restart with the lowest
// within-cluster sum of squares wins (earliest restart on ties).
KMeansResult kmeans(const PointMatrix& points, std::size_t k, std::uint64_t seed,
                    const KMeansOptions& options = {});

// ---------------------------------------------------------------------------
// Adjusted Rand Index

// Contingency-table ARI. Degenerate case where the expected and maximum
// index coincide (both partitions trivial and identical) returns 1, as does
// a single item.
double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b);
double adjusted_rand_index(std::span<const std::string> a, std::span<const std::string> b);

// ---------------------------------------------------------------------------
// PCA

struct PCAResult {
  std::size_t components = 0;
  std::vector<double> coordinates;  // rows x components
  std::vector<double> loadings;     // features x components
  std::vector<double> explained;    // variance fraction per component
  std::vector<std::size_t> top_features;
  std::vector<double> mean;         // column means removed before factoring

  double coordinate(std::size_t row, std::size_t c) const { return coordinates[row * components + c]; }
  double loading(std::size_t feature, std::size_t c) const { return loadings[feature * components + c]; }
};

// Centered SVD. Top features are ranked by the length of their biplot arrow:
// loadings on the first two components scaled by the singular values. Each
// component's sign is fixed so
// that its largest-magnitude loading is positive.
PCAResult pca_biplot(const PointMatrix& points, std::size_t components = 2,
                     std::size_t top_features = 5);

// ---------------------------------------------------------------------------
// SVM

struct SvmParams {
  double c = 1.0;
  int degree = 3;
  std::optional<double> gamma;  // unset: 1 / feature count
  double coef0 = 1.0;
  double tolerance = 1e-4;
  std::size_t max_iterations = 10'000'000;
  // z-score each feature with training mean and sample standard deviation
  // before the kernel; constant features are only centered.
  bool standardize = true;
};

// (gamma <x,y> + coef0)^degree
double polynomial_kernel(std::span<const double> x, std::span<const double> y, double gamma,
                         double coef0, int degree);

struct BinarySvm {
  std::size_t positive = 0;  // class index voted when decision > 0
  std::size_t negative = 0;
  PointMatrix support;               // support vectors
  std::vector<double> coefficients;  // alpha_i * y_i per support vector
  double rho = 0.0;                  // decision = sum coef K - rho
  double dual_balance = 0.0;         // sum_i alpha_i y_i over the subproblem
  std::size_t iterations = 0;
};

struct SvmModel {
  SvmParams params;  // gamma resolved
  std::size_t dim = 0;
  std::vector<std::string> classes;  // order of first appearance in training
  std::vector<BinarySvm> machines;   // pairs (0,1), (0,2), ..., (1,2), ...
  std::vector<double> center;        // empty unless params.standardize
  std::vector<double> scale;

  // Maps a raw point into the space the support vectors live in.
  std::vector<double> transform(std::span<const double> x) const;
  // x is a raw (untransformed) point.
  double decision(const BinarySvm& m, std::span<const double> x) const;
};

SvmModel svm_train(const PointMatrix& points, std::span<const std::string> labels,
                   SvmParams params = {});

// One-vs-one voting; a tied vote goes to the class seen first in training.
std::vector<std::string> svm_predict(const SvmModel& model, const PointMatrix& points);

// Winner of one-vs-one votes from pairwise decisions in machine order.
std::size_t ovo_vote(std::span<const double> decisions, std::size_t classes);

}  // namespace halo::ml
