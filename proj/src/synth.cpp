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

#include "halo/synth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "halo/csv.hpp"
#include "halo/error.hpp"

namespace halo::synth {

void SynthSpec::validate() const {
  if (meters.empty()) throw DataError("synth: no meters");
  if (topics < 1) throw DataError("synth: need at least one topic");
  if (words_per_topic < 1) throw DataError("synth: words_per_topic must be positive");
  if (function_words < 1) throw DataError("synth: need at least one function word");
  if (!(topic_focus >= 0.0 && topic_focus <= 1.0)) throw DataError("synth: topic_focus outside [0,1]");
  if (min_lines < 1 || min_lines > max_lines) throw DataError("synth: invalid line-count range");
  if (tokens_per_line < 1) throw DataError("synth: tokens_per_line must be positive");
  if (!(omission_rate >= 0.0 && omission_rate < 1.0)) throw DataError("synth: omission rate outside [0,1)");
  if (!(drift >= 0.0 && drift <= 1.0)) throw DataError("synth: drift outside [0,1]");
  if (!(undated_fraction >= 0.0 && undated_fraction <= 1.0)) throw DataError("synth: undated fraction outside [0,1]");
  if (year_min > year_max) throw DataError("synth: year_min exceeds year_max");
  for (const auto& m : meters) {
    if (m.prior.size() != topics) {
      throw DataError(fmt::format("synth: prior of {} has {} components, expected {}", m.meter.code(),
                                  m.prior.size(), topics));
    }
    for (double a : m.prior) {
      if (!(a > 0.0)) throw DataError(fmt::format("synth: prior of {} not strictly positive", m.meter.code()));
    }
    double s = 0.0;
    for (double w : m.pos_profile) {
      if (w < 0.0) throw DataError("synth: negative POS weight");
      s += w;
    }
    if (!(s > 0.0) || m.pos_profile[3] >= s) {
      throw DataError(fmt::format("synth: POS profile of {} emits no content words", m.meter.code()));
    }
  }
  for (std::size_t i = 0; i < meters.size(); ++i) {
    for (std::size_t j = i + 1; j < meters.size(); ++j) {
      if (meters[i].meter == meters[j].meter) throw DataError("synth: duplicate meter");
    }
  }
}

const char* period_name(Period p) {
  switch (p) {
    case Period::kEarly: return "early";
    case Period::kLate: return "late";
    case Period::kUndated: return "undated";
  }
  return "";
}

std::vector<double> shuffle_prior(const std::vector<double>& prior, Rng& rng) {
  auto out = prior;
  rng.shuffle(out);
  return out;
}

std::vector<double> drift_prior(const std::vector<double>& own, const std::vector<double>& target,
                                double lambda) {
  std::vector<double> out(own.size());
  for (std::size_t i = 0; i < own.size(); ++i) out[i] = (1.0 - lambda) * own[i] + lambda * target[i];
  return out;
}

namespace {

struct WordTables {
  // [topic][class] -> cumulative-ready weights over that class's words
  std::vector<std::array<std::vector<double>, 3>> weights;
  std::array<std::vector<std::string>, 3> words;
  std::vector<std::string> function_words;
};

WordTables build_words(const SynthSpec& spec, Rng& rng) {
  WordTables t;
  static constexpr char prefix[3] = {'n', 'a', 'v'};
  const std::size_t per_class = spec.topics * spec.words_per_topic;
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t w = 0; w < per_class; ++w) t.words[c].push_back(fmt::format("{}{:04}", prefix[c], w));
  }
  for (std::size_t w = 0; w < spec.function_words; ++w) t.function_words.push_back(fmt::format("f{:03}", w));

  t.weights.resize(spec.topics);
  const std::vector<double> ones(spec.words_per_topic, 1.0);
  for (std::size_t k = 0; k < spec.topics; ++k) {
    for (std::size_t c = 0; c < 3; ++c) {
      auto& w = t.weights[k][c];
      w.assign(per_class, (1.0 - spec.topic_focus) / static_cast<double>(per_class));
      const auto block = rng.dirichlet(ones);
      for (std::size_t j = 0; j < spec.words_per_topic; ++j) {
        w[k * spec.words_per_topic + j] += spec.topic_focus * block[j];
      }
    }
  }
  return t;
}

std::string stress_line(const scansion::MeterTemplate& m, double omission, Rng& rng) {
  const std::size_t tail_options = scansion::is_binary(m.foot()) ? 2 : 3;
  const auto len = static_cast<std::size_t>(m.anchor_length()) + rng.below(tail_options);
  std::string s(len, '0');
  for (int pos : m.strong_offsets()) {
    if (rng.uniform() >= omission) s[static_cast<std::size_t>(pos - 1)] = '1';
  }
  return s;
}

}  // namespace

Generated generate(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const auto words = build_words(spec, rng);

  Generated g;
  auto& truth = g.truth;
  std::vector<double> pooled(spec.topics, 0.0);
  for (const auto& m : spec.meters) {
    truth.meters.push_back(m.meter.code());
    truth.priors.push_back(m.prior);
    for (std::size_t k = 0; k < spec.topics; ++k) pooled[k] += m.prior[k] / static_cast<double>(spec.meters.size());
  }
  truth.drift_target = shuffle_prior(pooled, rng);
  for (const auto& m : spec.meters) truth.late_priors.push_back(drift_prior(m.prior, truth.drift_target, spec.drift));

  g.corpus.provenance.source = "synth";
  g.corpus.provenance.config_digest = fmt::format("synth[seed={},drift={}]", spec.seed, spec.drift);
  for (std::size_t mi = 0; mi < spec.meters.size(); ++mi) {
    const auto& ms = spec.meters[mi];
    double pos_total = 0.0;
    for (double w : ms.pos_profile) pos_total += w;
    for (std::size_t n = 0; n < spec.poems_per_meter; ++n) {
      // Per-poem stream keeps poems independent of generation order.
      Rng pr(derive_seed(spec.seed, mi + 1, n));
      corpus::Poem poem;
      poem.id = fmt::format("{}-{:05}", ms.meter.code(), n);
      PoemTruth pt;
      pt.id = poem.id;
      pt.meter = ms.meter.code();
      if (pr.uniform() < spec.undated_fraction) {
        pt.period = Period::kUndated;
      } else {
        const int year = spec.year_min + static_cast<int>(pr.below(static_cast<std::size_t>(spec.year_max - spec.year_min + 1)));
        poem.year = year;
        pt.period = year < spec.boundary_year ? Period::kEarly : Period::kLate;
      }
      const auto& prior = pt.period == Period::kLate ? truth.late_priors[mi] : ms.prior;
      pt.theta = pr.dirichlet(prior);

      const std::size_t lines = spec.min_lines + pr.below(spec.max_lines - spec.min_lines + 1);
      for (std::size_t l = 0; l < lines; ++l) {
        corpus::AnnotatedLine line;
        line.stress = stress_line(ms.meter, spec.omission_rate, pr);
        for (std::size_t t = 0; t < spec.tokens_per_line; ++t) {
          const auto cls = pr.categorical(ms.pos_profile);
          corpus::Token tok;
          tok.pos = kPosTags[cls];
          if (cls == 3) {
            tok.lemma = words.function_words[pr.below(words.function_words.size())];
          } else {
            const auto z = pr.categorical(pt.theta);
            tok.lemma = words.words[cls][pr.categorical(words.weights[z][cls])];
          }
          line.tokens.push_back(std::move(tok));
        }
        poem.lines.push_back(std::move(line));
      }
      g.corpus.poems.push_back(std::move(poem));
      truth.poems.push_back(std::move(pt));
    }
  }
  return g;
}

void write_truth_csv(std::ostream& out, const GroundTruth& truth) {
  out << "poem_id,meter,period";
  const std::size_t k = truth.poems.empty() ? 0 : truth.poems.front().theta.size();
  for (std::size_t i = 0; i < k; ++i) out << ",theta" << i;
  out << '\n';
  for (const auto& p : truth.poems) {
    out << csv::escape(p.id) << ',' << p.meter << ',' << period_name(p.period);
    for (double x : p.theta) out << ',' << fmt::format("{:.10f}", x);
    out << '\n';
  }
}

std::vector<scansion::MeterTemplate> default_meters(std::size_t count) {
  using scansion::FootKind;
  static const std::pair<FootKind, int> order[] = {
      {FootKind::kIamb, 4},       {FootKind::kTrochee, 4}, {FootKind::kDactyl, 3},
      {FootKind::kAmphibrach, 3}, {FootKind::kAnapest, 3}, {FootKind::kIamb, 5},
      {FootKind::kTrochee, 5},    {FootKind::kIamb, 6},    {FootKind::kAmphibrach, 4},
      {FootKind::kDactyl, 4}};
  if (count > std::size(order)) throw DataError(fmt::format("synth: at most {} default meters", std::size(order)));
  std::vector<scansion::MeterTemplate> out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(order[i].first, order[i].second);
  return out;
}

SynthSpec planted_halo_spec(std::size_t meters, double base, double boost) {
  SynthSpec spec;
  const auto templates = default_meters(meters);
  spec.topics = std::max<std::size_t>(spec.topics, meters);
  for (std::size_t m = 0; m < meters; ++m) {
    MeterSpec ms{templates[m], std::vector<double>(spec.topics, base)};
    for (std::size_t k = 0; k < spec.topics; ++k) {
      if (k % meters == m) ms.prior[k] += boost;
    }
    spec.meters.push_back(std::move(ms));
  }
  return spec;
}

SynthSpec null_spec(std::size_t meters) {
  auto spec = planted_halo_spec(meters);
  std::vector<double> mean(spec.topics, 0.0);
  for (const auto& m : spec.meters) {
    for (std::size_t k = 0; k < spec.topics; ++k) mean[k] += m.prior[k] / static_cast<double>(meters);
  }
  for (auto& m : spec.meters) m.prior = mean;
  return spec;
}

}  // namespace halo::synth
