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

#include <cmath>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

#include "halo/error.hpp"
#include "halo/mlcore.hpp"

namespace halo::ml {

double polynomial_kernel(std::span<const double> x, std::span<const double> y, double gamma,
                         double coef0, int degree) {
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
  const double base = gamma * dot + coef0;
  double out = 1.0;
  for (int i = 0; i < degree; ++i) out *= base;
  return out;
}

namespace {

constexpr double kTau = 1e-12;

struct DualSolution {
  std::vector<double> alpha;
  double rho = 0.0;
  std::size_t iterations = 0;
};

// Soft-margin dual by sequential minimal optimization with second-order
// working-set selection:
//   min 1/2 a'Qa - e'a  s.t.  y'a = 0, 0 <= a_i <= C,  Q_ij = y_i y_j K_ij.
DualSolution solve_dual(const std::vector<double>& kernel, const std::vector<int>& y, double c,
                        double eps, std::size_t max_iter) {
  const std::size_t n = y.size();
  auto kij = [&](std::size_t i, std::size_t j) { return kernel[i * n + j]; };
  auto qij = [&](std::size_t i, std::size_t j) { return static_cast<double>(y[i] * y[j]) * kij(i, j); };

  DualSolution sol;
  sol.alpha.assign(n, 0.0);
  std::vector<double> g(n, -1.0);
  auto& a = sol.alpha;
  auto upper = [&](std::size_t t) { return a[t] >= c; };
  auto lower = [&](std::size_t t) { return a[t] <= 0.0; };

  for (; sol.iterations < max_iter; ++sol.iterations) {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1) {
        if (!upper(t) && -g[t] >= gmax) {
          gmax = -g[t];
          i = t;
        }
      } else if (!lower(t) && g[t] >= gmax) {
        gmax = g[t];
        i = t;
      }
    }
    if (i == n) break;

    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      double grad_diff, quad;
      if (y[t] == 1) {
        if (lower(t)) continue;
        gmax2 = std::max(gmax2, g[t]);
        grad_diff = gmax + g[t];
        quad = kij(i, i) + kij(t, t) - 2.0 * y[i] * qij(i, t);
      } else {
        if (upper(t)) continue;
        gmax2 = std::max(gmax2, -g[t]);
        grad_diff = gmax - g[t];
        quad = kij(i, i) + kij(t, t) + 2.0 * y[i] * qij(i, t);
      }
      if (grad_diff > 0.0) {
        const double obj = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
        if (obj <= best_obj) {
          best_obj = obj;
          j = t;
        }
      }
    }
    if (gmax + gmax2 < eps || j == n) break;

    const double old_i = a[i], old_j = a[j];
    if (y[i] != y[j]) {
      double quad = kij(i, i) + kij(j, j) + 2.0 * qij(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-g[i] - g[j]) / quad;
      const double diff = a[i] - a[j];
      a[i] += delta;
      a[j] += delta;
      if (diff > 0.0) {
        if (a[j] < 0.0) {
          a[j] = 0.0;
          a[i] = diff;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = -diff;
      }
      if (diff > 0.0) {
        if (a[i] > c) {
          a[i] = c;
          a[j] = c - diff;
        }
      } else if (a[j] > c) {
        a[j] = c;
        a[i] = c + diff;
      }
    } else {
      double quad = kij(i, i) + kij(j, j) - 2.0 * qij(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (g[i] - g[j]) / quad;
      const double sum = a[i] + a[j];
      a[i] -= delta;
      a[j] += delta;
      if (sum > c) {
        if (a[i] > c) {
          a[i] = c;
          a[j] = sum - c;
        }
      } else if (a[j] < 0.0) {
        a[j] = 0.0;
        a[i] = sum;
      }
      if (sum > c) {
        if (a[j] > c) {
          a[j] = c;
          a[i] = sum - c;
        }
      } else if (a[i] < 0.0) {
        a[i] = 0.0;
        a[j] = sum;
      }
    }
    const double di = a[i] - old_i, dj = a[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) g[t] += qij(t, i) * di + qij(t, j) * dj;
  }

  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  std::size_t free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * g[t];
    if (upper(t)) {
      if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (lower(t)) {
      if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free;
      sum_free += yg;
    }
  }
  sol.rho = free > 0 ? sum_free / static_cast<double>(free) : (ub + lb) / 2.0;
  return sol;
}

}  // namespace

std::vector<double> SvmModel::transform(std::span<const double> x) const {
  std::vector<double> out(x.begin(), x.end());
  if (!center.empty()) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = (out[j] - center[j]) / scale[j];
  }
  return out;
}

double SvmModel::decision(const BinarySvm& m, std::span<const double> x) const {
  const auto z = transform(x);
  double f = -m.rho;
  for (std::size_t i = 0; i < m.support.rows(); ++i) {
    f += m.coefficients[i] * polynomial_kernel(m.support.row(i), z, *params.gamma, params.coef0, params.degree);
  }
  return f;
}

SvmModel svm_train(const PointMatrix& points, std::span<const std::string> labels,
                   SvmParams params) {
  if (points.rows() == 0) throw DataError("svm_train: empty input");
  if (labels.size() != points.rows()) {
    throw DataError(fmt::format("svm_train: {} labels for {} points", labels.size(), points.rows()));
  }
  SvmModel model;
  model.dim = points.cols();
  if (!params.gamma) params.gamma = 1.0 / static_cast<double>(std::max<std::size_t>(1, model.dim));
  model.params = params;

  const PointMatrix* data = &points;
  PointMatrix scaled(points.cols());
  if (params.standardize) {
    const std::size_t n = points.rows(), d = points.cols();
    model.center.assign(d, 0.0);
    model.scale.assign(d, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) model.center[j] += points(i, j);
    }
    for (auto& c : model.center) c /= static_cast<double>(n);
    if (n > 1) {
      for (std::size_t j = 0; j < d; ++j) {
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) ss += (points(i, j) - model.center[j]) * (points(i, j) - model.center[j]);
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        if (sd > 0.0) model.scale[j] = sd;
      }
    }
    for (std::size_t i = 0; i < n; ++i) scaled.add_row(model.transform(points.row(i)));
    data = &scaled;
  }

  const auto codes = factorize(labels);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] == members.size()) {
      members.emplace_back();
      model.classes.push_back(labels[i]);
    }
    members[codes[i]].push_back(i);
  }
  if (model.classes.size() < 2) throw DataError("svm_train: need at least 2 classes");

  for (std::size_t p = 0; p < model.classes.size(); ++p) {
    for (std::size_t q = p + 1; q < model.classes.size(); ++q) {
      std::vector<std::size_t> idx = members[p];
      idx.insert(idx.end(), members[q].begin(), members[q].end());
      std::vector<int> y(idx.size());
      for (std::size_t t = 0; t < idx.size(); ++t) y[t] = t < members[p].size() ? 1 : -1;
      const std::size_t n = idx.size();
      std::vector<double> kernel(n * n);
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = s; t < n; ++t) {
          kernel[s * n + t] = kernel[t * n + s] = polynomial_kernel(
              data->row(idx[s]), data->row(idx[t]), *params.gamma, params.coef0, params.degree);
        }
      }
      const auto sol = solve_dual(kernel, y, params.c, params.tolerance, params.max_iterations);
      BinarySvm m;
      m.positive = p;
      m.negative = q;
      m.rho = sol.rho;
      m.iterations = sol.iterations;
      m.support = PointMatrix(points.cols());
      for (std::size_t t = 0; t < n; ++t) {
        m.dual_balance += sol.alpha[t] * y[t];
        if (sol.alpha[t] > 0.0) {
          m.support.add_row(data->row(idx[t]));
          m.coefficients.push_back(sol.alpha[t] * y[t]);
        }
      }
      model.machines.push_back(std::move(m));
    }
  }
  return model;
}

std::size_t ovo_vote(std::span<const double> decisions, std::size_t classes) {
  std::vector<std::size_t> votes(classes, 0);
  std::size_t m = 0;
  for (std::size_t p = 0; p < classes; ++p) {
    for (std::size_t q = p + 1; q < classes; ++q, ++m) ++votes[decisions[m] > 0.0 ? p : q];
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < classes; ++c) {
    if (votes[c] > votes[best]) best = c;
  }
  return best;
}

std::vector<std::string> svm_predict(const SvmModel& model, const PointMatrix& points) {
  if (points.cols() != model.dim) {
    throw DataError(fmt::format("svm_predict: points have {} features, model expects {}",
                                points.cols(), model.dim));
  }
  std::vector<std::string> out;
  out.reserve(points.rows());
  std::vector<double> dec(model.machines.size());
  for (std::size_t i = 0; i < points.rows(); ++i) {
    for (std::size_t m = 0; m < model.machines.size(); ++m) dec[m] = model.decision(model.machines[m], points.row(i));
    out.push_back(model.classes[ovo_vote(dec, model.classes.size())]);
  }
  return out;
}

}  // namespace halo::ml
