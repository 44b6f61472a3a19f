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

// Independent reference implementations used as test oracles. None of these
// share code with the library paths they check.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "halo/rng.hpp"
#include "halo/scansion.hpp"
#include "halo/topics.hpp"

namespace halo::testing {

// Generates, for every template, the full set of stress strings it admits
// (up to max_len syllables) by construction: all subsets of the strong
// positions stressed, every weak position unstressed, 0-2 trailing
// unstressed syllables.
class TemplateEnumerator {
 public:
  TemplateEnumerator(std::span<const scansion::MeterTemplate> templates, int max_len)
      : templates_(templates.begin(), templates.end()) {
    for (std::size_t t = 0; t < templates_.size(); ++t) {
      const auto& tmpl = templates_[t];
      const auto& strong = tmpl.strong_offsets();
      const int anchor = strong.back();
      for (int len = anchor; len <= anchor + 2 && len <= max_len; ++len) {
        const std::size_t subsets = std::size_t{1} << strong.size();
        for (std::size_t mask = 0; mask < subsets; ++mask) {
          std::string s(static_cast<std::size_t>(len), '0');
          for (std::size_t i = 0; i < strong.size(); ++i) {
            if (mask >> i & 1u) s[static_cast<std::size_t>(strong[i] - 1)] = '1';
          }
          admitted_[s].insert(t);
          if (mask == 0 || mask + 1 == subsets) lines_.push_back(s);
        }
      }
    }
  }

  std::vector<std::size_t> matching(const std::string& s) const {
    const auto it = admitted_.find(s);
    if (it == admitted_.end()) return {};
    return {it->second.begin(), it->second.end()};
  }

  // Label by exhaustive scoring; empty string when unlabeled.
  std::string label(const std::vector<std::string>& lines, double threshold = 0.8) const {
    std::vector<std::size_t> hits(templates_.size(), 0);
    for (const auto& l : lines) {
      for (std::size_t t : matching(l)) ++hits[t];
    }
    std::size_t best = templates_.size();
    for (std::size_t t = 0; t < templates_.size(); ++t) {
      if (hits[t] == 0) continue;
      if (best == templates_.size() || hits[t] > hits[best]) {
        best = t;
        continue;
      }
      if (hits[t] < hits[best]) continue;
      const auto ft = static_cast<int>(templates_[t].foot());
      const auto fb = static_cast<int>(templates_[best].foot());
      if (ft < fb || (ft == fb && templates_[t].feet() > templates_[best].feet())) best = t;
    }
    if (best == templates_.size()) return "";
    // 0.8 * n lines, compared in integers: 5 * hits >= 4 * n.
    const auto n = lines.size();
    const bool ok = threshold == 0.8 ? 5 * hits[best] >= 4 * n
                                     : static_cast<double>(hits[best]) >= threshold * static_cast<double>(n);
    return ok ? templates_[best].code() : "";
  }

  // A line admitted by some template (fully stressed or stressless strong
  // slots), or occasionally random noise.
  std::string random_line(Rng& rng) const {
    if (rng.uniform() < 0.15) {
      std::string s(1 + rng.below(12), '0');
      for (auto& c : s) c = rng.uniform() < 0.4 ? '1' : '0';
      return s;
    }
    auto s = lines_[rng.below(lines_.size())];
    // Random omission on stressed positions.
    for (auto& c : s) {
      if (c == '1' && rng.uniform() < 0.2) c = '0';
    }
    return s;
  }

 private:
  std::vector<scansion::MeterTemplate> templates_;
  std::map<std::string, std::set<std::size_t>> admitted_;
  std::vector<std::string> lines_;
};

// All set partitions of n items as restricted growth strings.
inline std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t max_label) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = 0; v <= max_label + 1; ++v) {
      cur[i] = v;
      self(self, i + 1, std::max(max_label, v));
    }
  };
  if (n == 0) return {{}};
  cur[0] = 0;
  rec(rec, 1, 0);
  return out;
}

// Pair-counting form of the ARI: 2(ad - bc) / ((a+b)(b+d) + (a+c)(c+d)),
// with a = pairs together in both, d = apart in both. 1 when undefined.
inline double pair_counting_ari(std::span<const std::size_t> x, std::span<const std::size_t> y) {
  double a = 0, b = 0, c = 0, d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const bool sx = x[i] == x[j], sy = y[i] == y[j];
      if (sx && sy) {
        ++a;
      } else if (sx) {
        ++b;
      } else if (sy) {
        ++c;
      } else {
        ++d;
      }
    }
  }
  const double den = (a + b) * (b + d) + (a + c) * (c + d);
  if (den == 0.0) return 1.0;
  return 2.0 * (a * d - b * c) / den;
}

// Documents drawn from two disjoint vocabularies "a00".."aNN" and
// "b00".."bNN"; each document uses one half only.
inline topics::Documents two_topic_corpus(std::size_t docs, std::size_t half, std::size_t length,
                                          std::uint64_t seed) {
  std::vector<std::string> words;
  for (char prefix : {'a', 'b'}) {
    for (std::size_t i = 0; i < half; ++i) words.push_back(fmt::format("{}{:02}", prefix, i));
  }
  topics::Documents out;
  out.vocab = topics::Vocabulary(words);
  Rng rng(seed);
  for (std::size_t d = 0; d < docs; ++d) {
    const std::size_t topic = d % 2;
    std::vector<std::uint32_t> doc;
    for (std::size_t t = 0; t < length; ++t) {
      doc.push_back(static_cast<std::uint32_t>(topic * half + rng.below(half)));
    }
    out.ids.push_back(fmt::format("d{:03}", d));
    out.words.push_back(std::move(doc));
  }
  return out;
}

}  // namespace halo::testing
