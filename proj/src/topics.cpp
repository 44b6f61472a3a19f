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

#include "halo/topics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "halo/csv.hpp"
#include "halo/error.hpp"

namespace halo::topics {

void TopicConfig::validate() const {
  if (topics < 1) throw DataError("topic count must be at least 1");
  if (topics > 65535) throw DataError("topic count must fit in 16 bits");
  if (!(alpha_value() > 0.0)) throw DataError("alpha must be positive");
  if (!(beta > 0.0)) throw DataError("beta must be positive");
  if (iterations < 1) throw DataError("iterations must be at least 1");
  if (burn_in >= iterations) {
    throw DataError(fmt::format("burn_in {} must be below iterations {}", burn_in, iterations));
  }
  if (sample_lag < 1) throw DataError("sample_lag must be at least 1");
}

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    index_.emplace(words_[i], static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> Vocabulary::id(const std::string& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Documents::total_tokens() const {
  std::size_t n = 0;
  for (const auto& d : words) n += d.size();
  return n;
}

Documents build_documents(const corpus::Corpus& corpus, const simplify::PosFilter& filter,
                          std::size_t min_count) {
  const auto streams = simplify::lemma_streams(corpus, filter);
  std::map<std::string, std::size_t> freq;
  for (const auto& s : streams) {
    for (const auto& l : s) ++freq[l];
  }
  std::vector<std::string> kept;
  for (const auto& [l, f] : freq) {
    if (f >= min_count) kept.push_back(l);
  }
  Documents docs;
  docs.vocab = Vocabulary(std::move(kept));
  for (std::size_t d = 0; d < streams.size(); ++d) {
    std::vector<std::uint32_t> ids;
    for (const auto& l : streams[d]) {
      if (auto id = docs.vocab.id(l)) ids.push_back(*id);
    }
    if (ids.empty()) {
      docs.dropped.push_back(corpus.poems[d].id);
      continue;
    }
    docs.ids.push_back(corpus.poems[d].id);
    docs.words.push_back(std::move(ids));
  }
  return docs;
}

// ---------------------------------------------------------------------------
// Sampler

GibbsSampler::GibbsSampler(std::span<const std::vector<std::uint32_t>> docs,
                           std::size_t vocab_size, const TopicConfig& config)
    : docs_(docs),
      k_(config.topics),
      v_(vocab_size),
      alpha_(config.alpha_value()),
      beta_(config.beta),
      ndk_(docs.size() * config.topics, 0),
      nwk_(vocab_size * config.topics, 0),
      nk_(config.topics, 0),
      weights_(config.topics, 0.0),
      rng_(config.seed) {
  z_.resize(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    z_[d].resize(docs_[d].size());
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const auto w = docs_[d][i];
      const auto k = rng_.below(k_);
      z_[d][i] = static_cast<std::uint16_t>(k);
      ++ndk_[d * k_ + k];
      ++nwk_[w * k_ + k];
      ++nk_[k];
    }
  }
}

void GibbsSampler::sweep() {
  const double vbeta = static_cast<double>(v_) * beta_;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    std::uint32_t* nd = ndk_.data() + d * k_;
    const auto& doc = docs_[d];
    auto& zd = z_[d];
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto w = doc[i];
      std::uint32_t* nw = nwk_.data() + static_cast<std::size_t>(w) * k_;
      const std::size_t old = zd[i];
      --nd[old];
      --nw[old];
      --nk_[old];

      double total = 0.0;
      for (std::size_t k = 0; k < k_; ++k) {
        total += (nd[k] + alpha_) * (nw[k] + beta_) / (nk_[k] + vbeta);
        weights_[k] = total;
      }
      const double u = rng_.uniform() * total;
      std::size_t k = static_cast<std::size_t>(
          std::upper_bound(weights_.begin(), weights_.end(), u) - weights_.begin());
      if (k >= k_) k = k_ - 1;

      zd[i] = static_cast<std::uint16_t>(k);
      ++nd[k];
      ++nw[k];
      ++nk_[k];
    }
  }
}

bool GibbsSampler::counts_consistent() const {
  std::vector<std::uint64_t> ndk(ndk_.size(), 0), nwk(nwk_.size(), 0), nk(k_, 0);
  std::uint64_t total = 0;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    std::uint64_t row = 0;
    for (std::size_t k = 0; k < k_; ++k) row += ndk_[d * k_ + k];
    if (row != docs_[d].size()) return false;
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const auto k = z_[d][i];
      ++ndk[d * k_ + k];
      ++nwk[docs_[d][i] * k_ + k];
      ++nk[k];
    }
    total += docs_[d].size();
  }
  for (std::size_t k = 0; k < k_; ++k) {
    std::uint64_t col = 0;
    for (std::size_t w = 0; w < v_; ++w) col += nwk_[w * k_ + k];
    if (col != nk_[k]) return false;
  }
  if (std::accumulate(nk_.begin(), nk_.end(), std::uint64_t{0}) != total) return false;
  return std::equal(ndk.begin(), ndk.end(), ndk_.begin()) &&
         std::equal(nwk.begin(), nwk.end(), nwk_.begin()) &&
         std::equal(nk.begin(), nk.end(), nk_.begin());
}

void GibbsSampler::accumulate_theta(std::vector<double>& out) const {
  const double kalpha = static_cast<double>(k_) * alpha_;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    const double denom = static_cast<double>(docs_[d].size()) + kalpha;
    for (std::size_t k = 0; k < k_; ++k) out[d * k_ + k] += (ndk_[d * k_ + k] + alpha_) / denom;
  }
}

void GibbsSampler::accumulate_phi(std::vector<double>& out) const {
  const double vbeta = static_cast<double>(v_) * beta_;
  for (std::size_t k = 0; k < k_; ++k) {
    const double denom = nk_[k] + vbeta;
    for (std::size_t w = 0; w < v_; ++w) out[k * v_ + w] += (nwk_[w * k_ + k] + beta_) / denom;
  }
}

std::vector<std::string> TopicModel::top_words(std::size_t k, std::size_t n) const {
  const auto row = phi_row(k);
  std::vector<std::size_t> idx(row.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto take = std::min(n, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return row[a] != row[b] ? row[a] > row[b] : a < b;
                    });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < take; ++i) out.push_back(vocab.word(idx[i]));
  return out;
}

TopicModel train_lda(const Documents& docs, const TopicConfig& config) {
  config.validate();
  if (docs.vocab.size() == 0) throw DataError("train_lda: empty vocabulary");
  for (std::size_t d = 0; d < docs.words.size(); ++d) {
    if (docs.words[d].empty()) {
      throw DataError(fmt::format("train_lda: document '{}' is empty", docs.ids[d]));
    }
  }
  if (docs.words.empty()) throw DataError("train_lda: no documents");

  GibbsSampler sampler(docs.words, docs.vocab.size(), config);
  TopicModel m;
  m.topics = config.topics;
  m.alpha = config.alpha_value();
  m.beta = config.beta;
  m.seed = config.seed;
  m.iterations = config.iterations;
  m.burn_in = config.burn_in;
  m.sample_lag = config.sample_lag;
  m.vocab = docs.vocab;
  m.doc_ids = docs.ids;
  m.phi.assign(config.topics * docs.vocab.size(), 0.0);
  m.theta.assign(docs.words.size() * config.topics, 0.0);

  std::size_t samples = 0;
  for (std::size_t s = 1; s <= config.iterations; ++s) {
    sampler.sweep();
    if (s > config.burn_in && (s - config.burn_in) % config.sample_lag == 0) {
      sampler.accumulate_theta(m.theta);
      sampler.accumulate_phi(m.phi);
      ++samples;
    }
  }
  if (samples == 0) {
    sampler.accumulate_theta(m.theta);
    sampler.accumulate_phi(m.phi);
    samples = 1;
  }
  if (samples > 1) {
    const auto n = static_cast<double>(samples);
    for (double& x : m.theta) x /= n;
    for (double& x : m.phi) x /= n;
  }
  return m;
}

std::vector<double> doc_topics(const TopicModel& model, std::span<const std::string> lemmas,
                               std::size_t iterations, std::uint64_t seed) {
  std::vector<std::uint32_t> words;
  for (const auto& l : lemmas) {
    if (auto id = model.vocab.id(l)) words.push_back(*id);
  }
  if (words.empty()) throw DataError("doc_topics: document has no in-vocabulary lemma");
  if (iterations < 2) iterations = 2;

  const std::size_t k_count = model.topics;
  const std::size_t v = model.vocab_size();
  const double alpha = model.alpha;
  Rng rng(seed);
  std::vector<std::size_t> z(words.size());
  std::vector<double> nd(k_count, 0.0), q(k_count), acc(k_count, 0.0), est(k_count);
  for (std::size_t i = 0; i < words.size(); ++i) {
    z[i] = rng.below(k_count);
    nd[z[i]] += 1.0;
  }
  const double denom = static_cast<double>(words.size()) + static_cast<double>(k_count) * alpha;
  const std::size_t burn = iterations / 2;
  std::size_t samples = 0;
  for (std::size_t s = 0; s < iterations; ++s) {
    const bool record = s >= burn;
    if (record) std::fill(est.begin(), est.end(), 0.0);
    for (std::size_t i = 0; i < words.size(); ++i) {
      nd[z[i]] -= 1.0;
      double total = 0.0;
      for (std::size_t k = 0; k < k_count; ++k) {
        q[k] = (nd[k] + alpha) * model.phi[k * v + words[i]];
        total += q[k];
      }
      if (record) {
        for (std::size_t k = 0; k < k_count; ++k) est[k] += q[k] / total;
      }
      z[i] = rng.categorical(q);
      nd[z[i]] += 1.0;
    }
    if (record) {
      for (std::size_t k = 0; k < k_count; ++k) acc[k] += (est[k] + alpha) / denom;
      ++samples;
    }
  }
  double sum = 0.0;
  for (double& x : acc) {
    x /= static_cast<double>(samples);
    sum += x;
  }
  for (double& x : acc) x /= sum;
  return acc;
}

DistinctiveTopics distinctive_topics(const TopicModel& model,
                                     const std::map<std::string, std::string>& labels,
                                     std::size_t top, std::size_t words_per_topic) {
  std::map<std::string, std::vector<double>> sums;
  std::map<std::string, std::size_t> counts;
  for (std::size_t d = 0; d < model.doc_count(); ++d) {
    auto it = labels.find(model.doc_ids[d]);
    if (it == labels.end() || it->second.empty()) continue;
    auto& s = sums[it->second];
    s.resize(model.topics, 0.0);
    const auto row = model.theta_row(d);
    for (std::size_t k = 0; k < model.topics; ++k) s[k] += row[k];
    ++counts[it->second];
  }
  if (sums.size() < 2) {
    throw DataError(fmt::format("distinctive_topics: need at least 2 meters, found {}", sums.size()));
  }
  DistinctiveTopics out;
  const std::size_t m = sums.size();
  const std::size_t kk = model.topics;
  std::vector<double> means(m * kk);
  for (const auto& [meter, s] : sums) {
    const auto row = out.meters.size();
    out.meters.push_back(meter);
    for (std::size_t k = 0; k < kk; ++k) {
      means[row * kk + k] = s[k] / static_cast<double>(counts[meter]);
    }
  }
  out.z.assign(m * kk, 0.0);
  for (std::size_t k = 0; k < kk; ++k) {
    double mu = 0.0;
    for (std::size_t i = 0; i < m; ++i) mu += means[i * kk + k];
    mu /= static_cast<double>(m);
    double var = 0.0;
    for (std::size_t i = 0; i < m; ++i) var += (means[i * kk + k] - mu) * (means[i * kk + k] - mu);
    var /= static_cast<double>(m);
    const double sd = std::sqrt(var);
    for (std::size_t i = 0; i < m; ++i) {
      out.z[i * kk + k] = sd > 0.0 ? (means[i * kk + k] - mu) / sd : 0.0;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> idx(kk);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto take = std::min(top, kk);
    const double* zi = out.z.data() + i * kk;
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                        return zi[a] != zi[b] ? zi[a] > zi[b] : a < b;
                      });
    auto& list = out.by_meter[out.meters[i]];
    for (std::size_t j = 0; j < take; ++j) {
      list.push_back({idx[j], zi[idx[j]], model.top_words(idx[j], words_per_topic)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

void write_model(std::ostream& out, const TopicModel& m) {
  out << fmt::format("halo-lda K={} V={} D={} alpha={:.17g} beta={:.17g} seed={} iterations={} "
                     "burn_in={} sample_lag={}\n",
                     m.topics, m.vocab_size(), m.doc_count(), m.alpha, m.beta, m.seed,
                     m.iterations, m.burn_in, m.sample_lag);
  out << "vocab\n";
  for (const auto& w : m.vocab.words()) out << w << '\n';
  out << "phi\n";
  for (std::size_t k = 0; k < m.topics; ++k) {
    const auto row = m.phi_row(k);
    for (std::size_t w = 0; w < row.size(); ++w) {
      out << (w ? " " : "") << fmt::format("{:.17g}", row[w]);
    }
    out << '\n';
  }
  out << "theta\n";
  for (std::size_t d = 0; d < m.doc_count(); ++d) {
    out << std::quoted(m.doc_ids[d]);
    for (double x : m.theta_row(d)) out << ' ' << fmt::format("{:.17g}", x);
    out << '\n';
  }
}

namespace {

std::string expect_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(fmt::format("model file truncated before {}", what));
  return line;
}

}  // namespace

TopicModel read_model(std::istream& in) {
  TopicModel m;
  std::istringstream head(expect_line(in, "header"));
  std::string magic;
  head >> magic;
  if (magic != "halo-lda") throw DataError("not a halo-lda model file");
  std::map<std::string, std::string> kv;
  std::string item;
  while (head >> item) {
    const auto eq = item.find('=');
    if (eq != std::string::npos) kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  auto need = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw DataError(fmt::format("model header lacks '{}'", key));
    return it->second;
  };
  m.topics = std::stoul(need("K"));
  const std::size_t v = std::stoul(need("V"));
  const std::size_t d = std::stoul(need("D"));
  m.alpha = std::stod(need("alpha"));
  m.beta = std::stod(need("beta"));
  m.seed = std::stoull(need("seed"));
  m.iterations = std::stoul(need("iterations"));
  m.burn_in = std::stoul(need("burn_in"));
  m.sample_lag = std::stoul(need("sample_lag"));

  if (expect_line(in, "vocab") != "vocab") throw DataError("model file: expected 'vocab'");
  std::vector<std::string> words(v);
  for (auto& w : words) w = expect_line(in, "vocabulary entries");
  m.vocab = Vocabulary(std::move(words));

  if (expect_line(in, "phi") != "phi") throw DataError("model file: expected 'phi'");
  m.phi.resize(m.topics * v);
  for (std::size_t k = 0; k < m.topics; ++k) {
    std::istringstream row(expect_line(in, "phi rows"));
    for (std::size_t w = 0; w < v; ++w) {
      if (!(row >> m.phi[k * v + w])) throw DataError(fmt::format("model file: short phi row {}", k));
    }
  }
  if (expect_line(in, "theta") != "theta") throw DataError("model file: expected 'theta'");
  m.theta.resize(d * m.topics);
  m.doc_ids.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::istringstream row(expect_line(in, "theta rows"));
    row >> std::quoted(m.doc_ids[i]);
    for (std::size_t k = 0; k < m.topics; ++k) {
      if (!(row >> m.theta[i * m.topics + k])) {
        throw DataError(fmt::format("model file: short theta row for '{}'", m.doc_ids[i]));
      }
    }
  }
  return m;
}

void write_theta_csv(std::ostream& out, const TopicModel& m) {
  out << "poem_id";
  for (std::size_t k = 0; k < m.topics; ++k) out << ",t" << k;
  out << '\n';
  for (std::size_t d = 0; d < m.doc_count(); ++d) {
    out << csv::escape(m.doc_ids[d]);
    for (double x : m.theta_row(d)) out << ',' << fmt::format("{:.12g}", x);
    out << '\n';
  }
}

}  // namespace halo::topics
