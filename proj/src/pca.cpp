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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "halo/error.hpp"
#include "halo/mlcore.hpp"

namespace halo::ml {

PCAResult pca_biplot(const PointMatrix& points, std::size_t components, std::size_t top_features) {
  const auto n = static_cast<Eigen::Index>(points.rows());
  const auto d = static_cast<Eigen::Index>(points.cols());
  if (n < 2 || d < 2) throw DataError("pca: need at least 2 rows and 2 columns");

  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = points(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  if (x.squaredNorm() == 0.0) throw DataError("pca: input has zero variance");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const auto available = static_cast<std::size_t>(s.size());
  const std::size_t c = std::min(components, available);
  if (c == 0) throw DataError("pca: no components requested");

  Eigen::MatrixXd v = svd.matrixV().leftCols(static_cast<Eigen::Index>(c));
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index arg;
    v.col(j).cwiseAbs().maxCoeff(&arg);
    if (v(arg, j) < 0.0) v.col(j) *= -1.0;
  }
  const Eigen::MatrixXd coords = x * v;

  PCAResult r;
  r.components = c;
  r.mean.assign(mean.data(), mean.data() + d);
  r.coordinates.resize(static_cast<std::size_t>(n) * c);
  r.loadings.resize(static_cast<std::size_t>(d) * c);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) r.coordinates[static_cast<std::size_t>(i) * c + j] = coords(i, static_cast<Eigen::Index>(j));
  }
  for (Eigen::Index f = 0; f < d; ++f) {
    for (std::size_t j = 0; j < c; ++j) r.loadings[static_cast<std::size_t>(f) * c + j] = v(f, static_cast<Eigen::Index>(j));
  }
  const double total = s.squaredNorm();
  for (std::size_t j = 0; j < c; ++j) r.explained.push_back(s(static_cast<Eigen::Index>(j)) * s(static_cast<Eigen::Index>(j)) / total);

  std::vector<double> strength(static_cast<std::size_t>(d));
  const std::size_t used = std::min<std::size_t>(2, c);
  for (std::size_t f = 0; f < strength.size(); ++f) {
    double sq = 0.0;
    for (std::size_t j = 0; j < used; ++j) {
      const double arrow = r.loading(f, j) * s(static_cast<Eigen::Index>(j));
      sq += arrow * arrow;
    }
    strength[f] = std::sqrt(sq);
  }
  std::vector<std::size_t> idx(strength.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto take = std::min(top_features, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return strength[a] != strength[b] ? strength[a] > strength[b] : a < b;
                    });
  r.top_features.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
  return r;
}

}  // namespace halo::ml
