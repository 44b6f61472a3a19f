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
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

#include "halo/error.hpp"
#include "halo/mlcore.hpp"
#include "halo/rng.hpp"

namespace halo::ml {

void PointMatrix::add_row(std::span<const double> values, std::string tag) {
  if (values.size() != cols_) {
    throw DataError(fmt::format("row of width {} added to matrix of width {}", values.size(), cols_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  tags_.push_back(std::move(tag));
  ++rows_;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::vector<std::size_t> factorize(std::span<const std::string> labels) {
  std::unordered_map<std::string, std::size_t> codes;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(codes.emplace(l, codes.size()).first->second);
  return out;
}

namespace {

struct Run {
  std::vector<std::size_t> labels;
  std::vector<double> centroids;
  double wcss = 0.0;
  std::size_t iterations = 0;
  std::vector<double> trace;
};

std::vector<double> seed_centroids(const PointMatrix& x, std::size_t k, Rng& rng) {
  const std::size_t n = x.rows(), d = x.cols();
  std::vector<double> c(k * d);
  std::vector<bool> chosen(n, false);
  auto take = [&](std::size_t slot, std::size_t idx) {
    std::copy(x.row(idx).begin(), x.row(idx).end(), c.begin() + static_cast<std::ptrdiff_t>(slot * d));
    chosen[idx] = true;
  };
  take(0, rng.below(n));
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(x.row(i), {c.data(), d});
  for (std::size_t slot = 1; slot < k; ++slot) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t idx;
    if (total > 0.0) {
      idx = rng.categorical(d2);
    } else {
      // Every point coincides with a centroid: pick an unused point uniformly.
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) free.push_back(i);
      }
      idx = free[rng.below(free.size())];
    }
    take(slot, idx);
    const std::span<const double> cs(c.data() + slot * d, d);
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(x.row(i), cs));
  }
  return c;
}

double assign(const PointMatrix& x, const std::vector<double>& c, std::size_t k,
              std::vector<std::size_t>& labels) {
  const std::size_t d = x.cols();
  double wcss = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const double dist = squared_distance(x.row(i), {c.data() + j * d, d});
      if (dist < best) {
        best = dist;
        arg = j;
      }
    }
    labels[i] = arg;
    wcss += best;
  }
  return wcss;
}

double within_ss(const PointMatrix& x, const std::vector<double>& c,
                 const std::vector<std::size_t>& labels) {
  const std::size_t d = x.cols();
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) s += squared_distance(x.row(i), {c.data() + labels[i] * d, d});
  return s;
}

Run lloyd(const PointMatrix& x, std::size_t k, Rng& rng, const KMeansOptions& opt, double tol) {
  const std::size_t n = x.rows(), d = x.cols();
  Run r;
  r.centroids = seed_centroids(x, k, rng);
  r.labels.assign(n, 0);
  assign(x, r.centroids, k, r.labels);
  std::vector<double> next(k * d);
  std::vector<std::size_t> counts(k);
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = x.row(i);
      double* c = next.data() + r.labels[i] * d;
      for (std::size_t j = 0; j < d; ++j) c[j] += row[j];
      ++counts[r.labels[i]];
    }
    double shift = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      double* c = next.data() + j * d;
      if (counts[j] == 0) {
        // Empty cluster keeps its previous centroid.
        std::copy(r.centroids.begin() + static_cast<std::ptrdiff_t>(j * d),
                  r.centroids.begin() + static_cast<std::ptrdiff_t>((j + 1) * d), c);
        continue;
      }
      for (std::size_t f = 0; f < d; ++f) c[f] /= static_cast<double>(counts[j]);
      shift += squared_distance({c, d}, {r.centroids.data() + j * d, d});
    }
    r.centroids.swap(next);
    r.trace.push_back(within_ss(x, r.centroids, r.labels));
    const auto before = r.labels;
    assign(x, r.centroids, k, r.labels);
    r.iterations = it + 1;
    if (r.labels == before || shift <= tol) break;
  }
  r.wcss = within_ss(x, r.centroids, r.labels);
  return r;
}

}  // namespace

KMeansResult kmeans(const PointMatrix& points, std::size_t k, std::uint64_t seed,
                    const KMeansOptions& options) {
  const std::size_t n = points.rows(), d = points.cols();
  if (k < 1) throw DataError("kmeans: k must be at least 1");
  if (k > n) throw DataError(fmt::format("kmeans: k = {} exceeds {} points", k, n));

  // Tolerance scaled by the mean per-feature variance.
  double var = 0.0;
  for (std::size_t f = 0; f < d; ++f) {
    double mu = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu += points(i, f);
    mu /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) sq += (points(i, f) - mu) * (points(i, f) - mu);
    var += sq / static_cast<double>(n);
  }
  const double tol = d > 0 ? options.tolerance * var / static_cast<double>(d) : 0.0;

  KMeansResult best;
  bool have = false;
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, 0x6b6d, r));
    Run run = lloyd(points, k, rng, options, tol);
    if (!have || run.wcss < best.wcss) {
      best.assignment = {std::move(run.labels), k};
      best.centroids = std::move(run.centroids);
      best.wcss = run.wcss;
      best.iterations = run.iterations;
      best.best_restart = r;
      best.wcss_trace = std::move(run.trace);
      have = true;
    }
  }
  return best;
}

}  // namespace halo::ml
