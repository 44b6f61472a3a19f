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

#include <map>

#include <fmt/format.h>

#include "halo/error.hpp"
#include "halo/mlcore.hpp"

namespace halo::ml {

namespace {

double choose2(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) {
    throw DataError(fmt::format("ARI: labelings differ in length ({} vs {})", a.size(), b.size()));
  }
  if (a.empty()) throw DataError("ARI: empty labelings");
  if (a.size() == 1) return 1.0;

  std::map<std::pair<std::size_t, std::size_t>, double> cells;
  std::map<std::size_t, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cells[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [_, n] : cells) index += choose2(n);
  for (const auto& [_, n] : rows) sum_a += choose2(n);
  for (const auto& [_, n] : cols) sum_b += choose2(n);
  const double expected = sum_a * sum_b / choose2(static_cast<double>(a.size()));
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

double adjusted_rand_index(std::span<const std::string> a, std::span<const std::string> b) {
  const auto ca = factorize(a);
  const auto cb = factorize(b);
  return adjusted_rand_index(std::span<const std::size_t>(ca), std::span<const std::size_t>(cb));
}

}  // namespace halo::ml
