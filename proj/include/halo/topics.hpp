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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "halo/corpus.hpp"
#include "halo/rng.hpp"
#include "halo/simplify.hpp"

namespace halo::topics {

struct TopicConfig {
  std::size_t topics = 100;
  std::optional<double> alpha;  // unset: 50 / topics
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::size_t burn_in = 500;
  std::size_t sample_lag = 50;
  std::uint64_t seed = 1;

  double alpha_value() const { return alpha ? *alpha : 50.0 / static_cast<double>(topics); }
  void validate() const;
};

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> words);

  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::string& word(std::size_t id) const { return words_[id]; }
  std::optional<std::uint32_t> id(const std::string& w) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct Documents {
  std::vector<std::string> ids;
  std::vector<std::vector<std::uint32_t>> words;
  Vocabulary vocab;
  std::vector<std::string> dropped;  // poems left with no in-vocabulary token

  std::size_t total_tokens() const;
};

inline constexpr std::size_t kDefaultMinCount = 5;

// Lemma bags restricted to the POS filter and to lemmas with corpus
// frequency >= min_count. Vocabulary is sorted lexicographically.
Documents build_documents(const corpus::Corpus& corpus, const simplify::PosFilter& filter,
                          std::size_t min_count = kDefaultMinCount);

// Collapsed Gibbs state. Exposed so that count invariants can be checked
// sweep by sweep.
class GibbsSampler {
 public:
  GibbsSampler(std::span<const std::vector<std::uint32_t>> docs, std::size_t vocab_size,
               const TopicConfig& config);

  void sweep();
  // Sum_k n_dk = |d|, Sum_w n_kw = n_k, Sum_k n_k = total tokens, and the
  // counts agree with the assignments.
  bool counts_consistent() const;

  std::size_t topics() const { return k_; }
  std::size_t vocab_size() const { return v_; }
  std::size_t doc_count() const { return docs_.size(); }
  // (n_dk + alpha) / (N_d + K alpha), written into out[d*K + k].
  void accumulate_theta(std::vector<double>& out) const;
  // (n_kw + beta) / (n_k + V beta), written into out[k*V + w].
  void accumulate_phi(std::vector<double>& out) const;

 private:
  std::span<const std::vector<std::uint32_t>> docs_;
  std::size_t k_, v_;
  double alpha_, beta_;
  std::vector<std::vector<std::uint16_t>> z_;
  std::vector<std::uint32_t> ndk_;  // D x K
  std::vector<std::uint32_t> nwk_;  // V x K
  std::vector<std::uint32_t> nk_;   // K
  std::vector<double> weights_;
  Rng rng_;
};

struct TopicModel {
  std::size_t topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  std::size_t burn_in = 0;
  std::size_t sample_lag = 0;
  Vocabulary vocab;
  std::vector<std::string> doc_ids;
  std::vector<double> phi;    // topics x V
  std::vector<double> theta;  // docs x topics

  std::size_t vocab_size() const { return vocab.size(); }
  std::size_t doc_count() const { return doc_ids.size(); }
  std::span<const double> phi_row(std::size_t k) const {
    return {phi.data() + k * vocab_size(), vocab_size()};
  }
  std::span<const double> theta_row(std::size_t d) const {
    return {theta.data() + d * topics, topics};
  }
  // Highest-probability words of topic k.
  std::vector<std::string> top_words(std::size_t k, std::size_t n) const;
};

// phi and theta are averages over the samples taken after burn_in at every
// sample_lag-th sweep (the final sweep is used if none qualifies).
TopicModel train_lda(const Documents& docs, const TopicConfig& config);

inline constexpr std::size_t kDefaultFoldInIterations = 50;

// Topic proportions of an unseen lemma bag with phi held fixed. Uses the
// Rao-Blackwellized estimate over the second half of the sweeps.
std::vector<double> doc_topics(const TopicModel& model, std::span<const std::string> lemmas,
                               std::size_t iterations = kDefaultFoldInIterations,
                               std::uint64_t seed = 1);

struct DistinctiveTopic {
  std::size_t topic;
  double z;
  std::vector<std::string> top_words;
};

struct DistinctiveTopics {
  std::vector<std::string> meters;  // sorted
  std::map<std::string, std::vector<DistinctiveTopic>> by_meter;
  // meters x topics z-score matrix.
  std::vector<double> z;
};

// Per-meter mean theta, z-scored across meters per topic (population std;
// zero variance gives z = 0); the `top` highest z-scores per meter.
DistinctiveTopics distinctive_topics(const TopicModel& model,
                                     const std::map<std::string, std::string>& labels,
                                     std::size_t top = 5, std::size_t words_per_topic = 3);

void write_model(std::ostream& out, const TopicModel& model);
TopicModel read_model(std::istream& in);

// CSV: poem_id,t0,...,t{K-1}
void write_theta_csv(std::ostream& out, const TopicModel& model);

}  // namespace halo::topics
