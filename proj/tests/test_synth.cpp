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
#include <numeric>
#include <sstream>

#include "halo/error.hpp"
#include "halo/scansion.hpp"
#include "halo/synth.hpp"

using namespace halo;
using namespace halo::synth;

namespace {

std::vector<double> normalized(std::vector<double> v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
  return v;
}

}  // namespace

TEST_CASE("generated lines fit their meter and scansion recovers it") {
  auto spec = planted_halo_spec(5);
  spec.poems_per_meter = 60;
  const auto g = generate(spec);
  const auto templates = scansion::default_templates();
  REQUIRE(g.corpus.size() == 300);
  for (std::size_t i = 0; i < g.corpus.size(); ++i) {
    const auto& poem = g.corpus.poems[i];
    const auto tmpl = scansion::parse_code(g.truth.poems[i].meter);
    REQUIRE(tmpl);
    for (const auto& line : poem.lines) CHECK(scansion::line_matches(line.stress, *tmpl));
    const auto r = scansion::label_poem(poem, templates);
    REQUIRE(r.label);
    CHECK(r.label->code == g.truth.poems[i].meter);
  }
}

TEST_CASE("mean topic proportions approach the normalized prior") {
  auto spec = planted_halo_spec(3);
  spec.poems_per_meter = 3000;
  spec.min_lines = 1;
  spec.max_lines = 1;
  spec.tokens_per_line = 1;
  const auto g = generate(spec);
  for (std::size_t m = 0; m < 3; ++m) {
    std::vector<double> mean(spec.topics, 0.0);
    std::size_t n = 0;
    for (const auto& p : g.truth.poems) {
      if (p.meter != g.truth.meters[m]) continue;
      for (std::size_t k = 0; k < spec.topics; ++k) mean[k] += p.theta[k];
      ++n;
    }
    const auto expected = normalized(g.truth.priors[m]);
    double l1 = 0.0;
    for (std::size_t k = 0; k < spec.topics; ++k) l1 += std::abs(mean[k] / n - expected[k]);
    CHECK(l1 <= 0.05);
  }
}

TEST_CASE("planted priors differ by meter and the null prior is shared") {
  const auto planted = planted_halo_spec(3, 0.1, 0.5);
  CHECK(planted.meters[0].prior != planted.meters[1].prior);
  for (const auto& m : planted.meters) {
    for (std::size_t k = 0; k < planted.topics; ++k) {
      const double base = 0.1;
      CHECK(m.prior[k] >= base - 1e-12);
    }
  }
  const auto null = null_spec(3);
  CHECK(null.meters[0].prior == null.meters[1].prior);
  CHECK(null.meters[1].prior == null.meters[2].prior);
}

TEST_CASE("generation is deterministic in the seed") {
  auto spec = planted_halo_spec(3);
  spec.poems_per_meter = 30;
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a.corpus.poems == b.corpus.poems);
  spec.seed += 1;
  CHECK_FALSE(generate(spec).corpus.poems == a.corpus.poems);
  std::ostringstream ta, tb;
  write_truth_csv(ta, a.truth);
  write_truth_csv(tb, b.truth);
  CHECK(ta.str() == tb.str());
  CHECK(ta.str().rfind("poem_id,meter,period,theta0", 0) == 0);
}

TEST_CASE("shuffle_prior is a permutation") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> prior(1 + rng.below(12));
    for (double& x : prior) x = rng.uniform();
    auto s = shuffle_prior(prior, rng);
    auto a = prior;
    std::sort(a.begin(), a.end());
    std::sort(s.begin(), s.end());
    CHECK(a == s);
  }
}

TEST_CASE("drift interpolates between own and target") {
  const std::vector<double> own = {1, 0, 0}, target = {0, 0.5, 0.5};
  CHECK(drift_prior(own, target, 0.0) == own);
  CHECK(drift_prior(own, target, 1.0) == target);
  const auto half = drift_prior(own, target, 0.5);
  CHECK(half[0] == doctest::Approx(0.5));
  CHECK(half[2] == doctest::Approx(0.25));

  auto spec = planted_halo_spec(3);
  spec.poems_per_meter = 5;
  spec.drift = 0.0;
  auto g = generate(spec);
  CHECK(g.truth.late_priors == g.truth.priors);
  spec.drift = 1.0;
  g = generate(spec);
  for (const auto& p : g.truth.late_priors) CHECK(p == g.truth.drift_target);
}

TEST_CASE("periods follow the boundary year and the undated fraction") {
  auto spec = planted_halo_spec(2);
  spec.poems_per_meter = 400;
  spec.undated_fraction = 0.25;
  const auto g = generate(spec);
  std::size_t undated = 0;
  for (std::size_t i = 0; i < g.corpus.size(); ++i) {
    const auto& poem = g.corpus.poems[i];
    const auto period = g.truth.poems[i].period;
    if (!poem.year) {
      CHECK(period == Period::kUndated);
      ++undated;
      continue;
    }
    CHECK(*poem.year >= spec.year_min);
    CHECK(*poem.year <= spec.year_max);
    CHECK(period == (*poem.year < spec.boundary_year ? Period::kEarly : Period::kLate));
  }
  CHECK(undated > 150);
  CHECK(undated < 250);
}

TEST_CASE("invalid specs are rejected") {
  auto bad = [](auto mutate) {
    auto spec = planted_halo_spec(3);
    mutate(spec);
    return spec;
  };
  CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.meters.clear(); })), DataError);
  CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.drift = 1.5; })), DataError);
  CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.omission_rate = 1.0; })), DataError);
  CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.min_lines = 9; s.max_lines = 3; })), DataError);
  CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.meters[0].prior.pop_back(); })), DataError);
  CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.meters[0].prior[0] = 0.0; })), DataError);
  CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.meters[1].meter = s.meters[0].meter; })), DataError);
  CHECK_THROWS_AS(generate(bad([](SynthSpec& s) { s.meters[0].pos_profile = {0, 0, 0, 1}; })), DataError);
  CHECK_THROWS_AS(default_meters(99), DataError);
}
