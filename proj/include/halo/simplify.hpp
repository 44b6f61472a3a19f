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
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "halo/corpus.hpp"
#include "halo/parallel.hpp"

namespace halo::simplify {

using PosFilter = std::set<std::string>;

// NOUN, ADJ, VERB: the content classes kept for embeddings and topics.
PosFilter default_pos_filter();

inline bool admits(const PosFilter& filter, const std::string& pos) {
  return filter.count(pos) > 0;
}

// Lemma frequencies ranked by descending count, ties broken lexicographically.
class VocabStats {
 public:
  VocabStats() = default;
  VocabStats(std::vector<std::string> lemmas, std::vector<std::size_t> freqs, std::size_t top_n);

  std::size_t size() const { return lemmas_.size(); }
  std::size_t top_n() const { return top_n_; }
  bool contains(const std::string& lemma) const { return index_.count(lemma) > 0; }
  // 1-based rank; 0 if absent.
  std::size_t rank(const std::string& lemma) const;
  std::size_t frequency(const std::string& lemma) const;
  bool in_top(const std::string& lemma) const;

  // Ranked order: lemma(1) is the most frequent.
  const std::vector<std::string>& lemmas() const { return lemmas_; }
  const std::vector<std::size_t>& frequencies() const { return freqs_; }

 private:
  std::vector<std::string> lemmas_;
  std::vector<std::size_t> freqs_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t top_n_ = 0;
};

inline constexpr std::size_t kDefaultTopN = 1000;
inline constexpr std::size_t kDefaultNeighbors = 10;

VocabStats build_vocab(const corpus::Corpus& corpus, const PosFilter& filter,
                       std::size_t top_n = kDefaultTopN);

// Per poem, the POS-filtered lemma stream in reading order.
std::vector<std::vector<std::string>> lemma_streams(const corpus::Corpus& corpus,
                                                    const PosFilter& filter);

class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  EmbeddingModel(std::vector<std::string> lemmas, std::vector<double> rows, std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return lemmas_.size(); }
  bool covers(const std::string& lemma) const { return index_.count(lemma) > 0; }
  const std::vector<std::string>& lemmas() const { return lemmas_; }
  std::span<const double> vector(const std::string& lemma) const;
  std::span<const double> vector(std::size_t i) const {
    return {rows_.data() + i * dim_, dim_};
  }
  // Cosine similarity; 0 when either vector is zero.
  double cosine(const std::string& a, const std::string& b) const;
  double cosine(std::size_t a, std::size_t b) const;
  std::size_t index_of(const std::string& lemma) const;

 private:
  std::vector<std::string> lemmas_;
  std::vector<double> rows_;   // size() x dim, row-major
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t dim_ = 0;
};

struct EmbeddingConfig {
  std::size_t window = 5;
  std::size_t dim = 100;
  double context_smoothing = 0.75;
  std::size_t min_count = 1;
  // Vocabularies up to this size use an exact dense SVD; larger ones a
  // seeded randomized range finder over the sparse PPMI matrix.
  std::size_t exact_svd_limit = 2000;
  std::size_t power_iterations = 4;
  std::uint64_t seed = 12345;
};

struct Cooccurrence {
  std::vector<std::string> lemmas;  // sorted
  // (row, col, count) with row/col indices into lemmas, sorted by (row, col).
  std::vector<std::tuple<std::size_t, std::size_t, double>> entries;
};

// Symmetric-window counts: every pair at distance <= window within a poem
// contributes 1 to both (a,b) and (b,a).
Cooccurrence count_cooccurrence(std::span<const std::vector<std::string>> streams,
                                std::size_t window, std::size_t min_count);

// Positive PMI with context-distribution smoothing; returns (row, col, value)
// for the positive entries only.
std::vector<std::tuple<std::size_t, std::size_t, double>> ppmi(const Cooccurrence& co,
                                                                double context_smoothing);

// PPMI rows reduced by a rank-dim truncated SVD (rows = U * Sigma).
EmbeddingModel train_embeddings(const corpus::Corpus& corpus, const PosFilter& filter,
                                const EmbeddingConfig& config = {});

// Text format: one lemma per line followed by dim whitespace-separated floats.
EmbeddingModel read_vectors(std::istream& in);
EmbeddingModel load_vectors(const std::string& path);
void write_vectors(std::ostream& out, const EmbeddingModel& model);

struct Neighbor {
  std::string lemma;
  double similarity;
};

// k most similar lemmas, excluding the query, by descending cosine; equal
// similarities in lexicographic order.
std::vector<Neighbor> nearest_neighbors(const EmbeddingModel& model, const std::string& lemma,
                                        std::size_t k = kDefaultNeighbors);

struct Replacement {
  std::string source;
  std::string target;
  double similarity;
  std::size_t freq_source;
  std::size_t freq_target;
};

struct SimplifyReport {
  std::vector<Replacement> replacements;  // sorted by source
  std::size_t replaced_tokens = 0;
  std::size_t retained_rare_tokens = 0;
  std::size_t vocab_before = 0;
  std::size_t vocab_after = 0;
};

struct SimplifyResult {
  corpus::Corpus corpus;
  SimplifyReport report;
};

// Replacement map for every rare lemma of `vocab` the model covers. Rare
// lemmas with no qualifying neighbor map to nothing.
std::vector<Replacement> replacement_map(const VocabStats& vocab, const EmbeddingModel& model,
                                         std::size_t k = kDefaultNeighbors,
                                         const ParallelOptions& parallel = {});

SimplifyResult simplify(const corpus::Corpus& corpus, const VocabStats& vocab,
                        const EmbeddingModel& model, const PosFilter& filter,
                        std::size_t k = kDefaultNeighbors, const ParallelOptions& parallel = {});

// CSV: source,target,similarity,freq_source,freq_target
void write_report_csv(std::ostream& out, const SimplifyReport& report);

}  // namespace halo::simplify
