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

#include "json.hpp"

#include "halo/corpus.hpp"
#include "halo/mlcore.hpp"
#include "halo/parallel.hpp"
#include "halo/rng.hpp"
#include "halo/simplify.hpp"
#include "halo/topics.hpp"

namespace halo::experiments {

// Per-poem feature vectors (topic proportions or POS frequencies) keyed by id.
class FeatureTable {
 public:
  FeatureTable() = default;
  explicit FeatureTable(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  std::optional<std::size_t> find(const std::string& id) const;
  void add(const std::string& id, std::span<const double> values);

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

FeatureTable theta_features(const topics::TopicModel& model);
// Reads the poem_id,t0..tK-1 CSV written by topics::write_theta_csv.
FeatureTable read_theta_csv(std::istream& in);
FeatureTable load_theta_csv(const std::string& path);

// Relative frequency of each admitted POS tag among the poem's admitted
// tokens (tags in sorted order). Poems without admitted tokens are skipped.
FeatureTable pos_features(const corpus::Corpus& corpus, const simplify::PosFilter& filter);

// poem id -> meter code; unlabeled poems are absent.
using Labels = std::map<std::string, std::string>;
Labels read_labels_csv(std::istream& in);
Labels load_labels_csv(const std::string& path);

struct ExperimentConfig {
  std::vector<std::string> meters;  // empty: every meter with more than min_poems poems
  std::size_t min_poems = 500;
  std::size_t sample_size = 100;
  // H1: unset means the balanced minimum floor(N_m / sample_size), capped.
  std::optional<std::size_t> samples_per_meter;
  std::size_t max_samples_per_meter = 10;
  std::size_t period_samples_per_meter = 5;  // H2 and H3
  std::size_t iterations = 1000;
  std::uint64_t seed = 1;
  int boundary_year = 1860;
  std::vector<std::size_t> sample_sizes = {1, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  bool shuffle_test_labels = false;  // H3 chance-level control
  std::size_t biplot_iteration = 0;
  ml::KMeansOptions kmeans;
  ml::SvmParams svm;
  ParallelOptions parallel;

  nlohmann::json to_json() const;
};

// Feature-table rows grouped by meter; meters sorted.
struct MeterPools {
  std::vector<std::string> meters;
  std::vector<std::vector<std::size_t>> rows;

  const std::vector<std::size_t>* find(const std::string& meter) const;
};

// Optional `keep` restricts pools to the listed poem ids (a period half).
MeterPools pool_by_meter(const FeatureTable& features, const Labels& labels,
                         const std::vector<std::string>* keep = nullptr);

// Whitelist if given (each must be present), else meters with > min_poems.
std::vector<std::string> select_meters(const MeterPools& pools, const ExperimentConfig& config);

struct SampleSet {
  std::vector<std::string> meter;               // per sample
  std::vector<std::vector<std::size_t>> members;  // feature-table rows per sample
};

// samples_per_meter pairwise-disjoint samples of sample_size for each meter.
SampleSet draw_samples(const MeterPools& pools, std::span<const std::string> meters,
                       std::size_t sample_size, std::size_t samples_per_meter, Rng& rng);

// Arithmetic mean of the member rows.
std::vector<double> aggregate(const FeatureTable& features, std::span<const std::size_t> members);

ml::PointMatrix sample_vectors(const FeatureTable& features, const SampleSet& samples);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  double median = 0.0;
  double p5 = 0.0;
  double p25 = 0.0;
  double p75 = 0.0;
  double p95 = 0.0;
};

// Percentiles by linear interpolation between order statistics.
Summary summarize(std::span<const double> values);
// p in [0, 1].
double percentile(std::vector<double> sorted_or_not, double p);

struct ExperimentReport {
  std::string kind;    // h1, h2, h3, pos-baseline
  std::string series;  // h3: loo, early->late, late->early
  std::string period;  // h2: early, late
  std::size_t sample_size = 0;
  std::size_t samples_per_meter = 0;
  std::vector<std::string> meters;
  std::vector<double> values;  // per iteration, in iteration order
  Summary summary;
};

ExperimentReport run_h1(const FeatureTable& features, const Labels& labels,
                        const ExperimentConfig& config, const std::string& kind = "h1");

struct H2Result {
  ExperimentReport early;
  ExperimentReport late;
};

H2Result run_h2(const FeatureTable& features, const Labels& labels, const corpus::Corpus& corpus,
                const ExperimentConfig& config);

std::vector<ExperimentReport> run_h3(const FeatureTable& features, const Labels& labels,
                                     const corpus::Corpus& corpus, const ExperimentConfig& config);

// H1 protocol on POS relative-frequency vectors.
ExperimentReport pos_baseline(const corpus::Corpus& corpus, const Labels& labels,
                              const simplify::PosFilter& filter, const ExperimentConfig& config);

struct Biplot {
  std::size_t iteration = 0;
  double ari = 0.0;
  std::vector<std::string> sample_ids;
  std::vector<std::string> meters;
  ml::PCAResult pca;
};

// PCA of the sample vectors drawn in one H1 iteration.
Biplot biplot(const FeatureTable& features, const Labels& labels, const ExperimentConfig& config);

// CSV: kind,series,period,sample_size,iteration,value
void write_values_csv(std::ostream& out, std::span<const ExperimentReport> reports);
nlohmann::json summary_json(std::span<const ExperimentReport> reports, const ExperimentConfig& config);
// CSV: sample_id,meter,x,y
void write_biplot_csv(std::ostream& out, const Biplot& b);
// CSV: feature,pc1,pc2 for the most contributing features.
void write_loadings_csv(std::ostream& out, const Biplot& b, const std::string& prefix = "t");

}  // namespace halo::experiments
