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

#include "halo/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <fmt/format.h>

#include "halo/csv.hpp"
#include "halo/error.hpp"
#include "halo/rng.hpp"

namespace halo::simplify {

PosFilter default_pos_filter() { return {"NOUN", "ADJ", "VERB"}; }

VocabStats::VocabStats(std::vector<std::string> lemmas, std::vector<std::size_t> freqs,
                       std::size_t top_n)
    : lemmas_(std::move(lemmas)), freqs_(std::move(freqs)), top_n_(top_n) {
  for (std::size_t i = 0; i < lemmas_.size(); ++i) index_.emplace(lemmas_[i], i);
}

std::size_t VocabStats::rank(const std::string& lemma) const {
  auto it = index_.find(lemma);
  return it == index_.end() ? 0 : it->second + 1;
}

std::size_t VocabStats::frequency(const std::string& lemma) const {
  auto it = index_.find(lemma);
  return it == index_.end() ? 0 : freqs_[it->second];
}

bool VocabStats::in_top(const std::string& lemma) const {
  const auto r = rank(lemma);
  return r != 0 && r <= top_n_;
}

VocabStats build_vocab(const corpus::Corpus& corpus, const PosFilter& filter, std::size_t top_n) {
  if (corpus.poems.empty()) throw DataError("build_vocab: empty corpus");
  std::map<std::string, std::size_t> counts;
  for (const auto& p : corpus.poems) {
    for (const auto& line : p.lines) {
      for (const auto& tok : line.tokens) {
        if (admits(filter, tok.pos)) ++counts[tok.lemma];
      }
    }
  }
  if (counts.empty()) throw DataError("build_vocab: no tokens pass the POS filter");
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  // std::map iteration is already lexicographic; stable sort keeps that for ties.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> lemmas;
  std::vector<std::size_t> freqs;
  lemmas.reserve(ranked.size());
  freqs.reserve(ranked.size());
  for (auto& [l, f] : ranked) {
    lemmas.push_back(std::move(l));
    freqs.push_back(f);
  }
  return VocabStats(std::move(lemmas), std::move(freqs), top_n);
}

std::vector<std::vector<std::string>> lemma_streams(const corpus::Corpus& corpus,
                                                    const PosFilter& filter) {
  std::vector<std::vector<std::string>> out;
  out.reserve(corpus.poems.size());
  for (const auto& p : corpus.poems) {
    std::vector<std::string> s;
    for (const auto& line : p.lines) {
      for (const auto& tok : line.tokens) {
        if (admits(filter, tok.pos)) s.push_back(tok.lemma);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// EmbeddingModel

EmbeddingModel::EmbeddingModel(std::vector<std::string> lemmas, std::vector<double> rows,
                               std::size_t dim)
    : lemmas_(std::move(lemmas)), rows_(std::move(rows)), dim_(dim) {
  if (rows_.size() != lemmas_.size() * dim_) {
    throw DataError("embedding rows do not match vocabulary size x dimension");
  }
  norms_.resize(lemmas_.size());
  for (std::size_t i = 0; i < lemmas_.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      const double v = rows_[i * dim_ + j];
      if (!std::isfinite(v)) {
        throw DataError(fmt::format("embedding for '{}' has a non-finite entry", lemmas_[i]));
      }
      s += v * v;
    }
    norms_[i] = std::sqrt(s);
    if (!index_.emplace(lemmas_[i], i).second) {
      throw DataError(fmt::format("duplicate embedding for '{}'", lemmas_[i]));
    }
  }
}

std::size_t EmbeddingModel::index_of(const std::string& lemma) const {
  auto it = index_.find(lemma);
  if (it == index_.end()) throw DataError(fmt::format("lemma '{}' not covered by the embedding model", lemma));
  return it->second;
}

std::span<const double> EmbeddingModel::vector(const std::string& lemma) const {
  return vector(index_of(lemma));
}

double EmbeddingModel::cosine(std::size_t a, std::size_t b) const {
  if (norms_[a] == 0.0 || norms_[b] == 0.0) return 0.0;
  const double* x = rows_.data() + a * dim_;
  const double* y = rows_.data() + b * dim_;
  double dot = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) dot += x[j] * y[j];
  return dot / (norms_[a] * norms_[b]);
}

double EmbeddingModel::cosine(const std::string& a, const std::string& b) const {
  return cosine(index_of(a), index_of(b));
}

// ---------------------------------------------------------------------------
// Training

Cooccurrence count_cooccurrence(std::span<const std::vector<std::string>> streams,
                                std::size_t window, std::size_t min_count) {
  std::map<std::string, std::size_t> freq;
  for (const auto& s : streams) {
    for (const auto& l : s) ++freq[l];
  }
  Cooccurrence co;
  std::map<std::string, std::size_t> index;
  for (const auto& [l, f] : freq) {
    if (f >= min_count) {
      index.emplace(l, co.lemmas.size());
      co.lemmas.push_back(l);
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, double> counts;
  for (const auto& s : streams) {
    std::vector<long> ids;
    ids.reserve(s.size());
    for (const auto& l : s) {
      auto it = index.find(l);
      ids.push_back(it == index.end() ? -1 : static_cast<long>(it->second));
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] < 0) continue;
      const std::size_t end = std::min(ids.size(), i + window + 1);
      for (std::size_t j = i + 1; j < end; ++j) {
        if (ids[j] < 0) continue;
        const auto a = static_cast<std::size_t>(ids[i]);
        const auto b = static_cast<std::size_t>(ids[j]);
        counts[{a, b}] += 1.0;
        counts[{b, a}] += 1.0;
      }
    }
  }
  co.entries.reserve(counts.size());
  for (const auto& [key, c] : counts) co.entries.emplace_back(key.first, key.second, c);
  return co;
}

std::vector<std::tuple<std::size_t, std::size_t, double>> ppmi(const Cooccurrence& co,
                                                                double context_smoothing) {
  const std::size_t v = co.lemmas.size();
  std::vector<double> row_sum(v, 0.0), col_sum(v, 0.0);
  for (const auto& [r, c, x] : co.entries) {
    row_sum[r] += x;
    col_sum[c] += x;
  }
  double smoothed_total = 0.0;
  for (double c : col_sum) smoothed_total += std::pow(c, context_smoothing);
  std::vector<std::tuple<std::size_t, std::size_t, double>> out;
  for (const auto& [r, c, x] : co.entries) {
    const double p_context = std::pow(col_sum[c], context_smoothing) / smoothed_total;
    const double pmi = std::log(x / row_sum[r] / p_context);
    if (pmi > 0.0) out.emplace_back(r, c, pmi);
  }
  return out;
}

namespace {

using Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

MatrixXd orthonormal_basis(const MatrixXd& y) {
  Eigen::HouseholderQR<MatrixXd> qr(y);
  return qr.householderQ() * MatrixXd::Identity(y.rows(), y.cols());
}

// Columns of U * Sigma for the leading `rank` singular triplets.
MatrixXd truncated_rows(const SparseMatrix& a, std::size_t rank, const EmbeddingConfig& cfg) {
  const auto n = a.rows();
  const auto d = static_cast<Eigen::Index>(rank);
  if (static_cast<std::size_t>(n) <= cfg.exact_svd_limit) {
    MatrixXd dense(a);
    Eigen::BDCSVD<MatrixXd> svd(dense, Eigen::ComputeThinU);
    return svd.matrixU().leftCols(d) * svd.singularValues().head(d).asDiagonal();
  }
  const auto l = std::min<Eigen::Index>(n, d + 10);
  Rng rng(cfg.seed);
  MatrixXd omega(n, l);
  for (Eigen::Index j = 0; j < l; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) omega(i, j) = rng.normal();
  }
  MatrixXd q = orthonormal_basis(a * omega);
  for (std::size_t it = 0; it < cfg.power_iterations; ++it) {
    MatrixXd z = orthonormal_basis(a.transpose() * q);
    q = orthonormal_basis(a * z);
  }
  MatrixXd b = (a.transpose() * q).transpose();  // l x n
  Eigen::BDCSVD<MatrixXd> svd(b, Eigen::ComputeThinU);
  MatrixXd u = q * svd.matrixU();
  return u.leftCols(d) * svd.singularValues().head(d).asDiagonal();
}

}  // namespace

EmbeddingModel train_embeddings(const corpus::Corpus& corpus, const PosFilter& filter,
                                const EmbeddingConfig& config) {
  if (config.dim == 0) throw DataError("embedding dimension must be positive");
  if (config.window == 0) throw DataError("embedding window must be positive");
  const auto streams = lemma_streams(corpus, filter);
  const auto co = count_cooccurrence(streams, config.window, config.min_count);
  const std::size_t v = co.lemmas.size();
  if (v < config.dim) {
    throw DataError(fmt::format("embedding vocabulary of {} lemmas is smaller than dimension {}",
                                v, config.dim));
  }
  const auto cells = ppmi(co, config.context_smoothing);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(cells.size());
  for (const auto& [r, c, x] : cells) {
    triplets.emplace_back(static_cast<int>(r), static_cast<int>(c), x);
  }
  SparseMatrix m(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v));
  m.setFromTriplets(triplets.begin(), triplets.end());

  const MatrixXd rows = truncated_rows(m, config.dim, config);
  std::vector<double> flat(v * config.dim);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < config.dim; ++j) {
      flat[i * config.dim + j] = rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return EmbeddingModel(co.lemmas, std::move(flat), config.dim);
}

EmbeddingModel read_vectors(std::istream& in) {
  std::vector<std::string> lemmas;
  std::vector<double> rows;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream ss(line);
    std::string lemma;
    if (!(ss >> lemma)) continue;
    std::vector<double> vals;
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw DataError(fmt::format("vectors line {}: '{}' is not a number", line_number, tok));
      }
    }
    // word2vec text files may start with a "count dim" header.
    if (line_number == 1 && vals.size() == 1 && lemmas.empty() &&
        std::all_of(lemma.begin(), lemma.end(), ::isdigit)) {
      continue;
    }
    if (dim == 0) dim = vals.size();
    if (vals.empty() || vals.size() != dim) {
      throw DataError(fmt::format("vectors line {}: expected {} values, got {}", line_number, dim,
                                  vals.size()));
    }
    lemmas.push_back(std::move(lemma));
    rows.insert(rows.end(), vals.begin(), vals.end());
  }
  if (lemmas.empty()) throw DataError("vector file contains no vectors");
  return EmbeddingModel(std::move(lemmas), std::move(rows), dim);
}

EmbeddingModel load_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open vector file '{}'", path));
  return read_vectors(in);
}

void write_vectors(std::ostream& out, const EmbeddingModel& model) {
  for (std::size_t i = 0; i < model.size(); ++i) {
    out << model.lemmas()[i];
    for (double v : model.vector(i)) out << ' ' << fmt::format("{:.9g}", v);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Neighbors and replacement

namespace {

std::vector<Neighbor> neighbors_of(const EmbeddingModel& model, std::size_t q, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> sims;
  sims.reserve(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (i != q) sims.emplace_back(model.cosine(q, i), i);
  }
  const auto& names = model.lemmas();
  auto better = [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return names[a.second] < names[b.second];
  };
  const std::size_t take = std::min(k, sims.size());
  std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(take), sims.end(),
                    better);
  std::vector<Neighbor> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back({names[sims[i].second], sims[i].first});
  return out;
}

}  // namespace

std::vector<Neighbor> nearest_neighbors(const EmbeddingModel& model, const std::string& lemma,
                                        std::size_t k) {
  return neighbors_of(model, model.index_of(lemma), k);
}

std::vector<Replacement> replacement_map(const VocabStats& vocab, const EmbeddingModel& model,
                                         std::size_t k, const ParallelOptions& parallel) {
  std::vector<std::string> rare;
  for (const auto& l : vocab.lemmas()) {
    if (!vocab.in_top(l) && model.covers(l)) rare.push_back(l);
  }
  std::sort(rare.begin(), rare.end());
  std::vector<std::optional<Replacement>> found(rare.size());
  for_each_index(rare.size(), parallel, [&](std::size_t i) {
    const auto& src = rare[i];
    const auto f_src = vocab.frequency(src);
    // Neighbors arrive by descending similarity, so the first qualifying one wins.
    for (const auto& nb : neighbors_of(model, model.index_of(src), k)) {
      if (vocab.in_top(nb.lemma) && vocab.frequency(nb.lemma) > f_src) {
        found[i] = Replacement{src, nb.lemma, nb.similarity, f_src, vocab.frequency(nb.lemma)};
        break;
      }
    }
  });
  std::vector<Replacement> out;
  for (auto& r : found) {
    if (r) out.push_back(std::move(*r));
  }
  return out;
}

SimplifyResult simplify(const corpus::Corpus& corpus, const VocabStats& vocab,
                        const EmbeddingModel& model, const PosFilter& filter, std::size_t k,
                        const ParallelOptions& parallel) {
  SimplifyResult res;
  res.report.replacements = replacement_map(vocab, model, k, parallel);
  std::unordered_map<std::string, const Replacement*> by_source;
  for (const auto& r : res.report.replacements) by_source.emplace(r.source, &r);

  res.corpus = corpus;
  res.corpus.provenance.config_digest += fmt::format(";simplify[top={},k={}]", vocab.top_n(), k);
  std::set<std::string> after;
  for (auto& p : res.corpus.poems) {
    for (auto& line : p.lines) {
      for (auto& tok : line.tokens) {
        if (!admits(filter, tok.pos)) continue;
        if (vocab.contains(tok.lemma) && !vocab.in_top(tok.lemma)) {
          auto it = by_source.find(tok.lemma);
          if (it != by_source.end()) {
            tok.lemma = it->second->target;
            ++res.report.replaced_tokens;
          } else {
            ++res.report.retained_rare_tokens;
          }
        }
        after.insert(tok.lemma);
      }
    }
  }
  res.report.vocab_before = vocab.size();
  res.report.vocab_after = after.size();
  return res;
}

void write_report_csv(std::ostream& out, const SimplifyReport& report) {
  out << "source,target,similarity,freq_source,freq_target\n";
  for (const auto& r : report.replacements) {
    out << csv::escape(r.source) << ',' << csv::escape(r.target) << ','
        << fmt::format("{:.6f}", r.similarity) << ',' << r.freq_source << ',' << r.freq_target
        << '\n';
  }
}

}  // namespace halo::simplify
