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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "halo/error.hpp"
#include "halo/mlcore.hpp"
#include "halo/rng.hpp"
#include "oracles.hpp"

using namespace halo;
using namespace halo::ml;

namespace {

PointMatrix gaussian_groups(Rng& rng, std::size_t groups, std::size_t per, std::size_t dim, double separation,
                            std::vector<std::size_t>* truth) {
  PointMatrix m(dim);
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t i = 0; i < per; ++i) {
      std::vector<double> row(dim);
      for (std::size_t j = 0; j < dim; ++j) row[j] = (j == g % dim ? separation * static_cast<double>(g + 1) : 0.0) + rng.normal();
      m.add_row(row);
      truth->push_back(g);
    }
  }
  return m;
}

PointMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  PointMatrix m(rows.front().size());
  for (const auto& r : rows) m.add_row(r);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("k-means recovers well-separated groups") {
  Rng rng(1);
  std::vector<std::size_t> truth;
  const auto pts = gaussian_groups(rng, 3, 20, 4, 10.0, &truth);
  const auto r = kmeans(pts, 3, 42);
  CHECK(adjusted_rand_index(r.assignment.labels, truth) == 1.0);
  CHECK(r.assignment.k == 3);
  CHECK(r.centroids.size() == 12);
}

TEST_CASE("k-means degenerate and duplicate cases") {
  const auto pts = from_rows({{0, 0}, {1, 0}, {5, 5}, {9, 1}});
  const auto all = kmeans(pts, 4, 1);
  CHECK(all.wcss == 0.0);
  auto sorted = all.assignment.labels;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3});

  const auto dup = from_rows({{0, 0}, {0, 0}, {0.1, 0}, {10, 10}, {10, 10.2}});
  const auto r = kmeans(dup, 2, 3);
  CHECK(r.assignment.labels[0] == r.assignment.labels[1]);
  CHECK(r.assignment.labels[3] == r.assignment.labels[4]);
  CHECK(r.assignment.labels[0] != r.assignment.labels[3]);

  CHECK_THROWS_AS(kmeans(pts, 5, 1), DataError);
  CHECK_THROWS_AS(kmeans(pts, 0, 1), DataError);
}

TEST_CASE("property: Lloyd iterations never increase WCSS; runs are reproducible") {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::size_t> truth;
    const auto pts = gaussian_groups(rng, 2 + rng.below(3), 5 + rng.below(10), 3, 1.5, &truth);
    const std::size_t k = 2 + rng.below(3);
    const auto a = kmeans(pts, k, trial);
    for (std::size_t i = 1; i < a.wcss_trace.size(); ++i) CHECK(a.wcss_trace[i] <= a.wcss_trace[i - 1] + 1e-9);
    CHECK(a.wcss == doctest::Approx(a.wcss_trace.back()));
    const auto b = kmeans(pts, k, trial);
    CHECK(a.assignment.labels == b.assignment.labels);
    CHECK(a.wcss == b.wcss);
    // Reported WCSS equals the recomputed within-cluster sum.
    double w = 0.0;
    for (std::size_t i = 0; i < pts.rows(); ++i) {
      const auto c = a.assignment.labels[i];
      w += squared_distance(pts.row(i), std::span<const double>(a.centroids.data() + c * 3, 3));
    }
    CHECK(w == doctest::Approx(a.wcss).epsilon(1e-9));
  }
}

// ---------------------------------------------------------------------------

TEST_CASE("ARI examples") {
  const std::vector<std::string> a = {"A", "A", "B", "B"};
  CHECK(adjusted_rand_index(a, std::vector<std::string>{"1", "1", "2", "2"}) == 1.0);
  CHECK(adjusted_rand_index(a, std::vector<std::string>{"1", "2", "1", "2"}) == doctest::Approx(-0.5));
  CHECK(adjusted_rand_index(a, std::vector<std::string>{"1", "1", "1", "1"}) == 0.0);
  CHECK_THROWS_AS(adjusted_rand_index(a, std::vector<std::string>{"1"}), DataError);
}

TEST_CASE("ARI equals pair counting on all partition pairs up to n = 6") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto parts = testing::set_partitions(n);
    for (const auto& x : parts) {
      for (const auto& y : parts) {
        REQUIRE(adjusted_rand_index(x, y) == doctest::Approx(testing::pair_counting_ari(x, y)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("property: ARI is symmetric and label-permutation invariant") {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(30);
    std::vector<std::size_t> x(n), y(n);
    for (auto& v : x) v = rng.below(4);
    for (auto& v : y) v = rng.below(5);
    const double xy = adjusted_rand_index(x, y);
    CHECK(xy == doctest::Approx(adjusted_rand_index(y, x)).epsilon(1e-12));
    std::vector<std::size_t> perm = {3, 0, 2, 1};
    auto x2 = x;
    for (auto& v : x2) v = perm[v] + 10;
    CHECK(xy == doctest::Approx(adjusted_rand_index(x2, y)).epsilon(1e-12));
    CHECK(xy <= 1.0 + 1e-12);
  }
}

// ---------------------------------------------------------------------------

TEST_CASE("PCA of collinear points has one component") {
  PointMatrix m(3);
  for (int i = 0; i < 10; ++i) {
    const double t = i * 0.7 - 2.0;
    m.add_row(std::vector<double>{t, 2 * t, -t});
  }
  const auto r = pca_biplot(m);
  CHECK(r.explained[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(r.explained[1]) < 1e-9);
  // Largest-magnitude loading is positive.
  CHECK(r.loading(1, 0) > 0.0);
  CHECK(r.loading(1, 0) == doctest::Approx(2.0 / std::sqrt(6.0)));
  CHECK(r.top_features.front() == 1);
}

TEST_CASE("PCA agrees with the covariance eigendecomposition") {
  Rng rng(7);
  const std::size_t n = 40, d = 5;
  PointMatrix m(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = rng.normal() * (j == 2 ? std::sqrt(10.0) : 1.0);
    row[4] += 0.5 * row[0];
    m.add_row(row);
  }
  const auto r = pca_biplot(m, 2, 3);
  CHECK(r.top_features.front() == 2);

  Eigen::MatrixXd x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  }
  x.rowwise() -= x.colwise().mean();
  const Eigen::MatrixXd cov = x.transpose() * x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const auto ev = es.eigenvalues();  // ascending
  const double total = ev.sum();
  CHECK(r.explained[0] == doctest::Approx(ev(4) / total).epsilon(1e-9));
  CHECK(r.explained[1] == doctest::Approx(ev(3) / total).epsilon(1e-9));
  for (std::size_t c = 0; c < 2; ++c) {
    Eigen::VectorXd v = es.eigenvectors().col(4 - static_cast<Eigen::Index>(c));
    double dot = 0.0;
    for (std::size_t f = 0; f < d; ++f) dot += v(static_cast<Eigen::Index>(f)) * r.loading(f, c);
    CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-9));
    // Coordinates are projections of the centered rows.
    for (std::size_t i = 0; i < n; ++i) {
      double proj = 0.0;
      for (std::size_t f = 0; f < d; ++f) proj += x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)) * r.loading(f, c);
      CHECK(r.coordinate(i, c) == doctest::Approx(proj).epsilon(1e-9));
    }
  }
}

TEST_CASE("PCA preconditions") {
  CHECK_THROWS_AS(pca_biplot(from_rows({{1, 2}, {1, 2}, {1, 2}})), DataError);
  CHECK_THROWS_AS(pca_biplot(from_rows({{1, 2}})), DataError);
}

// ---------------------------------------------------------------------------

TEST_CASE("polynomial kernel Gram matrices are positive semidefinite") {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 5 + rng.below(30), d = 1 + rng.below(8);
    std::vector<std::vector<double>> xs(n, std::vector<double>(d));
    for (auto& x : xs) {
      for (auto& v : x) v = rng.normal();
    }
    Eigen::MatrixXd g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            polynomial_kernel(xs[i], xs[j], 1.0 / static_cast<double>(d), 1.0, 3);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    CHECK(es.eigenvalues().minCoeff() >= -1e-9 * std::max(1.0, es.eigenvalues().maxCoeff()));
  }
  const std::vector<double> a = {1, 2}, b = {3, -1};
  CHECK(polynomial_kernel(a, b, 0.5, 1.0, 3) == doctest::Approx(std::pow(0.5 * 1 + 1, 3)));
}

TEST_CASE("SVM decision values match the libsvm reference") {
  // Reference values computed with libsvm (through scikit-learn's SVC) on
  // the same data: poly kernel, degree 3, gamma 1/3, coef0 1, no scaling.
  const auto x = from_rows({{0.9, 0.1, 0.3}, {0.8, 0.3, 0.1}, {0.7, 0.2, 0.4}, {0.95, 0.05, 0.2}, {0.4, 0.5, 0.6},
                            {0.1, 0.9, 0.2}, {0.3, 0.7, 0.1}, {0.2, 0.8, 0.4}, {0.5, 0.6, 0.3}, {0.15, 0.85, 0.05},
                            {0.2, 0.1, 0.9}, {0.3, 0.3, 0.8}, {0.1, 0.2, 0.7}, {0.6, 0.4, 0.7}, {0.25, 0.15, 0.95}});
  std::vector<std::string> y;
  for (const char* c : {"a", "b", "c"}) y.insert(y.end(), 5, c);
  const auto q = from_rows({{0.5, 0.5, 0.5}, {0.9, 0.2, 0.2}, {0.1, 0.6, 0.6}, {0.0, 0.0, 1.0}});
  struct Case {
    double c;
    double decisions[4][3];
    const char* predicted[4];
  };
  const Case cases[] = {
      {1.0,
       {{0.0516501372, -0.014480463, -0.0731223332},
        {0.915687915, 1.0702392205, -0.0045200473},
        {-0.5482426036, -0.7235371506, -0.0735961092},
        {0.375589952, -1.384952057, -1.7510908647}},
       {"c", "a", "c", "c"}},
      {10.0,
       {{0.8513358872, 0.6927845205, 0.0591616894},
        {1.772698428, 2.07193023, 0.4635228869},
        {0.2441724486, -0.0913982344, 0.0097073721},
        {3.1611178928, -2.6966820499, -2.3429755894}},
       {"a", "a", "a", "c"}},
  };
  for (const auto& cs : cases) {
    SvmParams p;
    p.c = cs.c;
    p.tolerance = 1e-6;
    p.standardize = false;
    const auto model = svm_train(x, y, p);
    REQUIRE(model.machines.size() == 3);
    CHECK(*model.params.gamma == doctest::Approx(1.0 / 3.0));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t m = 0; m < 3; ++m) {
        CHECK(model.decision(model.machines[m], q.row(i)) == doctest::Approx(cs.decisions[i][m]).epsilon(1e-4));
      }
    }
    const auto pred = svm_predict(model, q);
    for (std::size_t i = 0; i < 4; ++i) CHECK(pred[i] == cs.predicted[i]);
  }
}

TEST_CASE("property: dual solutions are feasible") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    PointMatrix x(3);
    std::vector<std::string> y;
    for (int i = 0; i < 30; ++i) {
      const bool pos = rng.below(2) == 1;
      std::vector<double> row = {rng.normal() + (pos ? 1.0 : -1.0), rng.normal(), rng.normal()};
      x.add_row(row);
      y.push_back(pos ? "p" : "n");
    }
    if (std::count(y.begin(), y.end(), "p") == 0 || std::count(y.begin(), y.end(), "n") == 0) continue;
    const auto model = svm_train(x, y);
    for (const auto& m : model.machines) {
      CHECK(std::abs(m.dual_balance) < 1e-9);
      for (double c : m.coefficients) CHECK(std::abs(c) <= model.params.c + 1e-12);
    }
  }
}

TEST_CASE("SVM training behaviour") {
  Rng rng(12);
  std::vector<std::size_t> truth;
  const auto pts = gaussian_groups(rng, 3, 15, 3, 6.0, &truth);
  std::vector<std::string> labels;
  for (auto t : truth) labels.push_back("g" + std::to_string(t));
  const auto model = svm_train(pts, labels);
  CHECK(svm_predict(model, pts) == labels);
  CHECK(model.classes == std::vector<std::string>{"g0", "g1", "g2"});

  const auto dup = from_rows({{1, 1}, {1, 1}, {3, 0}, {0, 3}});
  const std::vector<std::string> dl = {"x", "y", "x", "y"};
  const auto dm = svm_train(dup, dl);
  const auto dp = svm_predict(dm, dup);
  CHECK(dp[0] == dp[1]);

  const std::vector<std::string> one = {"x", "x", "x", "x"};
  CHECK_THROWS_AS(svm_train(dup, one), DataError);
  CHECK_THROWS_AS(svm_predict(model, dup), DataError);
}

TEST_CASE("one-vs-one ties go to the first-seen class") {
  // Three classes in a cycle: a beats b, b beats c, c beats a.
  const std::vector<double> cycle = {1.0, -1.0, 1.0};
  CHECK(ovo_vote(cycle, 3) == 0);
  const std::vector<double> b_wins = {-1.0, 1.0, 1.0};
  CHECK(ovo_vote(b_wins, 3) == 1);
  // Four classes: a and c both collect two votes; a was seen first.
  // Pairs: ab ac ad bc bd cd.
  const std::vector<double> four = {1.0, -1.0, 1.0, 1.0, -1.0, 1.0};
  CHECK(ovo_vote(four, 4) == 0);
}
