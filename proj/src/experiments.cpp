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

#include "halo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "halo/csv.hpp"
#include "halo/error.hpp"

namespace halo::experiments {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Feature tables and labels

std::optional<std::size_t> FeatureTable::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void FeatureTable::add(const std::string& id, std::span<const double> values) {
  if (values.size() != dim_) {
    throw DataError(fmt::format("feature row for '{}' has {} values, expected {}", id, values.size(), dim_));
  }
  if (!index_.emplace(id, ids_.size()).second) {
    throw DataError(fmt::format("duplicate feature row for '{}'", id));
  }
  ids_.push_back(id);
  values_.insert(values_.end(), values.begin(), values.end());
}

FeatureTable theta_features(const topics::TopicModel& model) {
  FeatureTable t(model.topics);
  for (std::size_t d = 0; d < model.doc_count(); ++d) t.add(model.doc_ids[d], model.theta_row(d));
  return t;
}

FeatureTable read_theta_csv(std::istream& in) {
  const auto table = csv::read(in);
  if (table.header.size() < 2 || table.header[0] != "poem_id") {
    throw DataError("theta CSV must start with a poem_id column followed by topic columns");
  }
  FeatureTable t(table.header.size() - 1);
  std::vector<double> row(t.dim());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& f = table.rows[r];
    if (f.size() != table.header.size()) {
      throw DataError(fmt::format("theta CSV row {}: {} fields, expected {}", r + 2, f.size(), table.header.size()));
    }
    for (std::size_t k = 0; k < t.dim(); ++k) {
      try {
        row[k] = std::stod(f[k + 1]);
      } catch (const std::exception&) {
        throw DataError(fmt::format("theta CSV row {}: '{}' is not a number", r + 2, f[k + 1]));
      }
    }
    t.add(f[0], row);
  }
  return t;
}

FeatureTable load_theta_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open theta file '{}'", path));
  return read_theta_csv(in);
}

FeatureTable pos_features(const corpus::Corpus& corpus, const simplify::PosFilter& filter) {
  const std::vector<std::string> tags(filter.begin(), filter.end());
  FeatureTable t(tags.size());
  std::vector<double> row(tags.size());
  for (const auto& p : corpus.poems) {
    std::fill(row.begin(), row.end(), 0.0);
    double total = 0.0;
    for (const auto& line : p.lines) {
      for (const auto& tok : line.tokens) {
        auto it = std::lower_bound(tags.begin(), tags.end(), tok.pos);
        if (it != tags.end() && *it == tok.pos) {
          row[static_cast<std::size_t>(it - tags.begin())] += 1.0;
          total += 1.0;
        }
      }
    }
    if (total == 0.0) continue;
    for (double& x : row) x /= total;
    t.add(p.id, row);
  }
  return t;
}

Labels read_labels_csv(std::istream& in) {
  const auto table = csv::read(in);
  const int id_col = table.column("poem_id");
  const int label_col = table.column("label");
  if (id_col < 0 || label_col < 0) throw DataError("labels CSV needs poem_id and label columns");
  Labels out;
  for (const auto& row : table.rows) {
    const auto need = static_cast<std::size_t>(std::max(id_col, label_col));
    if (row.size() <= need) continue;
    const auto& label = row[static_cast<std::size_t>(label_col)];
    if (!label.empty()) out[row[static_cast<std::size_t>(id_col)]] = label;
  }
  return out;
}

Labels load_labels_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open labels file '{}'", path));
  return read_labels_csv(in);
}

// ---------------------------------------------------------------------------
// Config

json ExperimentConfig::to_json() const {
  return json{{"meters", meters},
              {"min_poems", min_poems},
              {"sample_size", sample_size},
              {"samples_per_meter", samples_per_meter ? json(*samples_per_meter) : json("auto")},
              {"max_samples_per_meter", max_samples_per_meter},
              {"period_samples_per_meter", period_samples_per_meter},
              {"iterations", iterations},
              {"seed", seed},
              {"boundary_year", boundary_year},
              {"sample_sizes", sample_sizes},
              {"shuffle_test_labels", shuffle_test_labels},
              {"biplot_iteration", biplot_iteration},
              {"kmeans",
               {{"restarts", kmeans.restarts},
                {"max_iterations", kmeans.max_iterations},
                {"tolerance", kmeans.tolerance}}},
              {"svm",
               {{"c", svm.c},
                {"degree", svm.degree},
                {"gamma", svm.gamma ? json(*svm.gamma) : json("1/d")},
                {"coef0", svm.coef0},
                {"tolerance", svm.tolerance},
                {"standardize", svm.standardize}}}};
}

// ---------------------------------------------------------------------------
// Sampling

const std::vector<std::size_t>* MeterPools::find(const std::string& meter) const {
  auto it = std::lower_bound(meters.begin(), meters.end(), meter);
  if (it == meters.end() || *it != meter) return nullptr;
  return &rows[static_cast<std::size_t>(it - meters.begin())];
}

MeterPools pool_by_meter(const FeatureTable& features, const Labels& labels,
                         const std::vector<std::string>* keep) {
  std::set<std::string> allowed;
  if (keep) allowed.insert(keep->begin(), keep->end());
  std::map<std::string, std::vector<std::size_t>> grouped;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& id = features.ids()[i];
    if (keep && !allowed.count(id)) continue;
    auto it = labels.find(id);
    if (it == labels.end()) continue;
    grouped[it->second].push_back(i);
  }
  MeterPools pools;
  for (auto& [m, rows] : grouped) {
    pools.meters.push_back(m);
    pools.rows.push_back(std::move(rows));
  }
  return pools;
}

std::vector<std::string> select_meters(const MeterPools& pools, const ExperimentConfig& config) {
  std::vector<std::string> out;
  if (!config.meters.empty()) {
    for (const auto& m : config.meters) {
      if (!pools.find(m)) throw DataError(fmt::format("whitelisted meter '{}' has no labeled poems", m));
      out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    for (std::size_t i = 0; i < pools.meters.size(); ++i) {
      if (pools.rows[i].size() > config.min_poems) out.push_back(pools.meters[i]);
    }
  }
  if (out.size() < 2) {
    throw DataError(fmt::format("need at least 2 meters with more than {} poems, found {}",
                                config.min_poems, out.size()));
  }
  return out;
}

SampleSet draw_samples(const MeterPools& pools, std::span<const std::string> meters,
                       std::size_t sample_size, std::size_t samples_per_meter, Rng& rng) {
  if (sample_size < 1) throw DataError("sample_size must be at least 1");
  if (samples_per_meter < 1) throw DataError("samples_per_meter must be at least 1");
  SampleSet set;
  for (const auto& m : meters) {
    const auto* rows = pools.find(m);
    const std::size_t have = rows ? rows->size() : 0;
    const std::size_t need = sample_size * samples_per_meter;
    if (have < need) {
      throw DataError(fmt::format("meter '{}' has {} poems, {} samples of {} need {}", m, have,
                                  samples_per_meter, sample_size, need));
    }
    const auto picked = rng.sample_without_replacement(have, need);
    for (std::size_t s = 0; s < samples_per_meter; ++s) {
      std::vector<std::size_t> members;
      members.reserve(sample_size);
      for (std::size_t j = 0; j < sample_size; ++j) members.push_back((*rows)[picked[s * sample_size + j]]);
      set.meter.push_back(m);
      set.members.push_back(std::move(members));
    }
  }
  return set;
}

std::vector<double> aggregate(const FeatureTable& features, std::span<const std::size_t> members) {
  if (members.empty()) throw DataError("aggregate: empty sample");
  std::vector<double> mean(features.dim(), 0.0);
  for (auto r : members) {
    const auto row = features.row(r);
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += row[k];
  }
  for (double& x : mean) x /= static_cast<double>(members.size());
  return mean;
}

ml::PointMatrix sample_vectors(const FeatureTable& features, const SampleSet& samples) {
  ml::PointMatrix points(features.dim());
  for (std::size_t s = 0; s < samples.members.size(); ++s) {
    points.add_row(aggregate(features, samples.members[s]), fmt::format("s{}", s));
  }
  return points;
}

// ---------------------------------------------------------------------------
// Summary

double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  if (!(p >= 0.0 && p <= 1.0)) throw DataError(fmt::format("percentile {} outside [0, 1]", p));
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + (v[hi] - v[lo]) * frac;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double x : values) sum += x;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double x : values) sq += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  s.median = percentile(v, 0.5);
  s.p5 = percentile(v, 0.05);
  s.p25 = percentile(v, 0.25);
  s.p75 = percentile(v, 0.75);
  s.p95 = percentile(v, 0.95);
  return s;
}

// ---------------------------------------------------------------------------
// Protocols

namespace {

enum Stream : std::uint64_t {
  kH1Draw = 1,
  kH1Cluster = 2,
  kH2Early = 3,
  kH2Late = 4,
  kH3 = 5,
};

struct ClusteringIteration {
  SampleSet samples;
  ml::PointMatrix points;
  ml::KMeansResult clusters;
  double ari = 0.0;
};

ClusteringIteration clustering_iteration(const FeatureTable& features, const MeterPools& pools,
                                         std::span<const std::string> meters,
                                         std::size_t sample_size, std::size_t spm,
                                         const ExperimentConfig& config, std::uint64_t stream,
                                         std::size_t index) {
  ClusteringIteration it;
  Rng rng(derive_seed(config.seed, stream, index));
  it.samples = draw_samples(pools, meters, sample_size, spm, rng);
  it.points = sample_vectors(features, it.samples);
  it.clusters = ml::kmeans(it.points, meters.size(), derive_seed(config.seed, stream + 0x100, index),
                           config.kmeans);
  const auto truth = ml::factorize(it.samples.meter);
  it.ari = ml::adjusted_rand_index(std::span<const std::size_t>(truth),
                                   std::span<const std::size_t>(it.clusters.assignment.labels));
  return it;
}

std::vector<double> clustering_values(const FeatureTable& features, const MeterPools& pools,
                                      std::span<const std::string> meters, std::size_t sample_size,
                                      std::size_t spm, const ExperimentConfig& config,
                                      std::uint64_t stream) {
  if (config.iterations < 1) throw DataError("iterations must be at least 1");
  // Fail early with the insufficiency message rather than inside the loop.
  {
    Rng probe(0);
    draw_samples(pools, meters, sample_size, spm, probe);
  }
  std::vector<double> values(config.iterations);
  for_each_index(config.iterations, config.parallel, [&](std::size_t i) {
    values[i] = clustering_iteration(features, pools, meters, sample_size, spm, config, stream, i).ari;
  });
  return values;
}

std::size_t balanced_samples_per_meter(const MeterPools& pools, std::span<const std::string> meters,
                                       const ExperimentConfig& config) {
  if (config.samples_per_meter) return *config.samples_per_meter;
  std::size_t spm = config.max_samples_per_meter;
  for (const auto& m : meters) spm = std::min(spm, pools.find(m)->size() / config.sample_size);
  if (spm == 0) {
    throw DataError(fmt::format("a selected meter has fewer than sample_size = {} poems", config.sample_size));
  }
  return spm;
}

std::vector<std::string> ids_in(const corpus::Corpus& c) {
  std::vector<std::string> out;
  out.reserve(c.poems.size());
  for (const auto& p : c.poems) out.push_back(p.id);
  return out;
}

}  // namespace

ExperimentReport run_h1(const FeatureTable& features, const Labels& labels,
                        const ExperimentConfig& config, const std::string& kind) {
  const auto pools = pool_by_meter(features, labels);
  ExperimentReport r;
  r.kind = kind;
  r.meters = select_meters(pools, config);
  r.sample_size = config.sample_size;
  r.samples_per_meter = balanced_samples_per_meter(pools, r.meters, config);
  r.values = clustering_values(features, pools, r.meters, r.sample_size, r.samples_per_meter,
                               config, kH1Draw);
  r.summary = summarize(r.values);
  return r;
}

H2Result run_h2(const FeatureTable& features, const Labels& labels, const corpus::Corpus& corpus,
                const ExperimentConfig& config) {
  const auto meters = select_meters(pool_by_meter(features, labels), config);
  const auto split = corpus::split_by_period(corpus, config.boundary_year);
  const auto early_ids = ids_in(split.early);
  const auto late_ids = ids_in(split.late);
  if (early_ids.empty() || late_ids.empty()) {
    throw DataError(fmt::format("boundary year {} leaves an empty period ({} early, {} late)",
                                config.boundary_year, early_ids.size(), late_ids.size()));
  }
  H2Result out;
  const std::pair<ExperimentReport*, const std::vector<std::string>*> halves[] = {
      {&out.early, &early_ids}, {&out.late, &late_ids}};
  for (const auto& [report, ids] : halves) {
    const bool early = report == &out.early;
    const auto pools = pool_by_meter(features, labels, ids);
    report->kind = "h2";
    report->period = early ? "early" : "late";
    report->meters = meters;
    report->sample_size = config.sample_size;
    report->samples_per_meter = config.period_samples_per_meter;
    try {
      report->values = clustering_values(features, pools, meters, config.sample_size,
                                         config.period_samples_per_meter, config,
                                         early ? kH2Early : kH2Late);
    } catch (const DataError& e) {
      throw DataError(fmt::format("{} period: {}", report->period, e.what()));
    }
    report->summary = summarize(report->values);
  }
  return out;
}

std::vector<ExperimentReport> run_h3(const FeatureTable& features, const Labels& labels,
                                     const corpus::Corpus& corpus, const ExperimentConfig& config) {
  const auto all_pools = pool_by_meter(features, labels);
  const auto meters = select_meters(all_pools, config);
  const auto split = corpus::split_by_period(corpus, config.boundary_year);
  const auto early_ids = ids_in(split.early);
  const auto late_ids = ids_in(split.late);
  const auto early = pool_by_meter(features, labels, &early_ids);
  const auto late = pool_by_meter(features, labels, &late_ids);
  const std::size_t spm = config.period_samples_per_meter;

  struct Series {
    const char* name;
    const MeterPools* train;
    const MeterPools* test;  // null: leave-one-out on train
  };
  const Series series[] = {{"loo", &all_pools, nullptr},
                           {"early->late", &early, &late},
                           {"late->early", &late, &early}};

  std::vector<ExperimentReport> reports;
  for (std::size_t si = 0; si < 3; ++si) {
    const auto& s = series[si];
    for (std::size_t size : config.sample_sizes) {
      ExperimentReport r;
      r.kind = "h3";
      r.series = s.name;
      r.sample_size = size;
      r.samples_per_meter = spm;
      r.meters = meters;
      {
        Rng probe(0);
        try {
          draw_samples(*s.train, meters, size, spm, probe);
          if (s.test) draw_samples(*s.test, meters, size, spm, probe);
        } catch (const DataError& e) {
          throw DataError(fmt::format("h3 series {} at sample size {}: {}", s.name, size, e.what()));
        }
      }
      r.values.resize(config.iterations);
      const std::uint64_t stream = kH3 + 0x1000 * (si + 1) + size;
      for_each_index(config.iterations, config.parallel, [&](std::size_t i) {
        Rng rng(derive_seed(config.seed, stream, i));
        const auto train = draw_samples(*s.train, meters, size, spm, rng);
        const auto train_x = sample_vectors(features, train);
        std::size_t correct = 0, total = 0;
        if (!s.test) {
          // Leave-one-out over the drawn samples.
          for (std::size_t hold = 0; hold < train.members.size(); ++hold) {
            ml::PointMatrix x(features.dim());
            std::vector<std::string> y;
            for (std::size_t j = 0; j < train.members.size(); ++j) {
              if (j == hold) continue;
              x.add_row(train_x.row(j));
              y.push_back(train.meter[j]);
            }
            const auto model = ml::svm_train(x, y, config.svm);
            ml::PointMatrix q(features.dim());
            q.add_row(train_x.row(hold));
            correct += ml::svm_predict(model, q)[0] == train.meter[hold] ? 1 : 0;
            ++total;
          }
        } else {
          const auto test = draw_samples(*s.test, meters, size, spm, rng);
          const auto test_x = sample_vectors(features, test);
          auto truth = test.meter;
          if (config.shuffle_test_labels) rng.shuffle(truth);
          const auto model = ml::svm_train(train_x, train.meter, config.svm);
          const auto pred = ml::svm_predict(model, test_x);
          for (std::size_t j = 0; j < pred.size(); ++j) correct += pred[j] == truth[j] ? 1 : 0;
          total = pred.size();
        }
        r.values[i] = static_cast<double>(correct) / static_cast<double>(total);
      });
      r.summary = summarize(r.values);
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

ExperimentReport pos_baseline(const corpus::Corpus& corpus, const Labels& labels,
                              const simplify::PosFilter& filter, const ExperimentConfig& config) {
  return run_h1(pos_features(corpus, filter), labels, config, "pos-baseline");
}

Biplot biplot(const FeatureTable& features, const Labels& labels, const ExperimentConfig& config) {
  const auto pools = pool_by_meter(features, labels);
  const auto meters = select_meters(pools, config);
  const auto spm = balanced_samples_per_meter(pools, meters, config);
  auto it = clustering_iteration(features, pools, meters, config.sample_size, spm, config, kH1Draw,
                                 config.biplot_iteration);
  Biplot b;
  b.iteration = config.biplot_iteration;
  b.ari = it.ari;
  b.meters = it.samples.meter;
  for (std::size_t s = 0; s < it.samples.members.size(); ++s) b.sample_ids.push_back(fmt::format("s{}", s));
  b.pca = ml::pca_biplot(it.points, 2, 5);
  return b;
}

// ---------------------------------------------------------------------------
// Output

void write_values_csv(std::ostream& out, std::span<const ExperimentReport> reports) {
  out << "kind,series,period,sample_size,iteration,value\n";
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      out << r.kind << ',' << csv::escape(r.series) << ',' << r.period << ',' << r.sample_size << ','
          << i << ',' << fmt::format("{:.17g}", r.values[i]) << '\n';
    }
  }
}

json summary_json(std::span<const ExperimentReport> reports, const ExperimentConfig& config) {
  json list = json::array();
  for (const auto& r : reports) {
    list.push_back({{"kind", r.kind},
                    {"series", r.series},
                    {"period", r.period},
                    {"sample_size", r.sample_size},
                    {"samples_per_meter", r.samples_per_meter},
                    {"meters", r.meters},
                    {"summary",
                     {{"count", r.summary.count},
                      {"mean", r.summary.mean},
                      {"std", r.summary.std},
                      {"median", r.summary.median},
                      {"p5", r.summary.p5},
                      {"p25", r.summary.p25},
                      {"p75", r.summary.p75},
                      {"p95", r.summary.p95},
                      {"iqr", r.summary.p75 - r.summary.p25}}}});
  }
  return json{{"seed", config.seed}, {"config", config.to_json()}, {"reports", std::move(list)}};
}

void write_biplot_csv(std::ostream& out, const Biplot& b) {
  out << "sample_id,meter,x,y\n";
  const std::size_t c = b.pca.components;
  for (std::size_t i = 0; i < b.sample_ids.size(); ++i) {
    out << b.sample_ids[i] << ',' << csv::escape(b.meters[i]) << ','
        << fmt::format("{:.10f}", b.pca.coordinate(i, 0)) << ','
        << fmt::format("{:.10f}", c > 1 ? b.pca.coordinate(i, 1) : 0.0) << '\n';
  }
}

void write_loadings_csv(std::ostream& out, const Biplot& b, const std::string& prefix) {
  out << "feature,pc1,pc2\n";
  const std::size_t c = b.pca.components;
  for (auto f : b.pca.top_features) {
    out << prefix << f << ',' << fmt::format("{:.10f}", b.pca.loading(f, 0)) << ','
        << fmt::format("{:.10f}", c > 1 ? b.pca.loading(f, 1) : 0.0) << '\n';
  }
}

}  // namespace halo::experiments
