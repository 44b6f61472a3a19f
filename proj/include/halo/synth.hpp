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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "halo/corpus.hpp"
#include "halo/rng.hpp"
#include "halo/scansion.hpp"

namespace halo::synth {

// Token classes emitted by the generator, in profile order.
inline constexpr std::array<const char*, 4> kPosTags = {"NOUN", "ADJ", "VERB", "OTHER"};

struct MeterSpec {
  scansion::MeterTemplate meter;
  std::vector<double> prior;  // Dirichlet parameter over the true topics
  std::array<double, 4> pos_profile{0.35, 0.15, 0.25, 0.25};
};

struct SynthSpec {
  std::vector<MeterSpec> meters;
  std::size_t topics = 9;
  std::size_t words_per_topic = 12;  // per content POS class
  double topic_focus = 0.9;          // word mass a topic puts on its own block
  std::size_t function_words = 20;
  std::size_t poems_per_meter = 600;
  std::size_t min_lines = 8;
  std::size_t max_lines = 40;
  std::size_t tokens_per_line = 3;
  double omission_rate = 0.2;
  double drift = 0.0;  // late prior = (1 - drift) own + drift shuffled
  int year_min = 1800;
  int year_max = 1919;
  int boundary_year = 1860;
  double undated_fraction = 0.0;
  std::uint64_t seed = 7;

  std::size_t vocab_size() const { return 3 * topics * words_per_topic + function_words; }
  // Throws DataError on an invalid spec.
  void validate() const;
};

enum class Period { kEarly, kLate, kUndated };
const char* period_name(Period p);

struct PoemTruth {
  std::string id;
  std::string meter;
  Period period = Period::kUndated;
  std::vector<double> theta;
};

struct GroundTruth {
  std::vector<PoemTruth> poems;
  std::vector<std::string> meters;
  std::vector<std::vector<double>> priors;       // per meter, early period
  std::vector<std::vector<double>> late_priors;  // per meter, after drift
  std::vector<double> drift_target;              // shared shuffled prior
};

struct Generated {
  corpus::Corpus corpus;
  GroundTruth truth;
};

// A permutation of the prior's components.
std::vector<double> shuffle_prior(const std::vector<double>& prior, Rng& rng);
// (1 - lambda) own + lambda target
std::vector<double> drift_prior(const std::vector<double>& own, const std::vector<double>& target,
                                double lambda);

Generated generate(const SynthSpec& spec);

void write_truth_csv(std::ostream& out, const GroundTruth& truth);

// Meters I4, T4, D3, A3, An3, I5, ... in that order.
std::vector<scansion::MeterTemplate> default_meters(std::size_t count);

// Each meter concentrates prior mass `boost` on its own subset of topics on
// top of a uniform `base`.
SynthSpec planted_halo_spec(std::size_t meters = 3, double base = 0.1, double boost = 0.5);
// Every meter shares the mean of the planted priors.
SynthSpec null_spec(std::size_t meters = 3);

}  // namespace halo::synth
