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

#include "halo/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "halo/corpus.hpp"
#include "halo/csv.hpp"
#include "halo/error.hpp"
#include "halo/experiments.hpp"
#include "halo/scansion.hpp"
#include "halo/simplify.hpp"
#include "halo/synth.hpp"
#include "halo/topics.hpp"

namespace halo::cli {

using nlohmann::json;

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot read '{}' for digest", path));
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

namespace {

struct Common {
  int threads = 0;
  bool paper_scale = false;
};

struct Run {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
};

std::ofstream open_out(const std::string& path) {
  if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty()) {
    std::filesystem::create_directories(parent);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw DataError(fmt::format("write failure on '{}'", path));
}

std::string to_string_via(auto&& writer) {
  std::ostringstream ss;
  writer(ss);
  return ss.str();
}

simplify::PosFilter parse_pos(const std::vector<std::string>& tags) {
  return simplify::PosFilter(tags.begin(), tags.end());
}

ParallelOptions parallel_from(const Common& c) {
  ParallelOptions p;
  p.threads = c.threads;
  p.execution = c.threads == 1 ? Execution::kSerial : Execution::kParallel;
  return p;
}

void write_manifest(const Run& run, const CLI::App& sub, const Common& common,
                    const std::vector<std::string>& argv, double seconds) {
  if (run.outputs.empty()) return;
  json inputs = json::array();
  for (const auto& in : run.inputs) inputs.push_back({{"path", in}, {"sha256", file_digest(in)}});
  json outputs = json::array();
  for (const auto& o : run.outputs) outputs.push_back({{"path", o}, {"sha256", file_digest(o)}});
  json config = json::object();
  for (const auto* opt : sub.get_options()) {
    if (opt->get_name() == "--help" || opt->get_lnames().empty()) continue;
    const auto& name = opt->get_lnames().front();
    const auto results = opt->results();
    if (!results.empty()) {
      config[name] = results.size() == 1 ? json(results.front()) : json(results);
    } else if (!opt->get_default_str().empty()) {
      config[name] = opt->get_default_str();
    }
  }
  config["threads"] = common.threads;
  config["paper-scale"] = common.paper_scale;
  const json m = {{"subcommand", run.command},
                  {"argv", argv},
                  {"config", config},
                  {"tool_version", kVersion},
                  {"inputs", inputs},
                  {"outputs", outputs},
                  {"warnings", run.warnings},
                  {"wall_clock_seconds", seconds}};
  write_text(run.outputs.front() + ".manifest.json", m.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Experiment option block shared by h1/h2/h3/pos-baseline/biplot.

struct ExperimentOptions {
  std::vector<std::string> meters;
  std::size_t min_poems = 500;
  std::size_t sample_size = 100;
  std::size_t samples_per_meter = 0;  // 0 = auto
  std::size_t max_samples_per_meter = 10;
  std::size_t period_samples_per_meter = 5;
  std::size_t iterations = 1000;
  std::uint64_t seed = 1;
  int boundary = 1860;
  std::vector<std::size_t> sample_sizes = {1, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  bool shuffle_test_labels = false;
  std::size_t biplot_iteration = 0;
  double svm_c = 1.0;

  void add_to(CLI::App* app, bool periods) {
    app->add_option("--meters", meters, "Meter whitelist (default: meters with more than --min-poems poems)")->delimiter(',');
    app->add_option("--min-poems", min_poems, "Automatic whitelist threshold")->capture_default_str();
    app->add_option("--sample-size", sample_size, "Poems per sample")->capture_default_str();
    app->add_option("--samples-per-meter", samples_per_meter, "Samples per meter per iteration (0 = balanced minimum)")->capture_default_str();
    app->add_option("--max-samples-per-meter", max_samples_per_meter, "Cap for the balanced minimum")->capture_default_str();
    app->add_option("--iterations", iterations, "Sampling iterations")->capture_default_str();
    app->add_option("--seed", seed, "Master seed")->capture_default_str();
    if (periods) {
      app->add_option("--boundary", boundary, "First year of the late period")->capture_default_str();
      app->add_option("--period-samples-per-meter", period_samples_per_meter, "Samples per meter per period")->capture_default_str();
    }
  }

  experiments::ExperimentConfig resolve(const Common& common) const {
    experiments::ExperimentConfig c;
    c.meters = meters;
    c.min_poems = min_poems;
    c.sample_size = sample_size;
    if (samples_per_meter > 0) c.samples_per_meter = samples_per_meter;
    c.max_samples_per_meter = max_samples_per_meter;
    c.period_samples_per_meter = period_samples_per_meter;
    c.iterations = common.paper_scale ? 10000 : iterations;
    c.seed = seed;
    c.boundary_year = boundary;
    c.sample_sizes = sample_sizes;
    c.shuffle_test_labels = shuffle_test_labels;
    c.biplot_iteration = biplot_iteration;
    c.svm.c = svm_c;
    c.parallel = parallel_from(common);
    return c;
  }
};

void write_reports(Run& run, const std::string& prefix,
                   std::span<const experiments::ExperimentReport> reports,
                   const experiments::ExperimentConfig& config) {
  const auto values = prefix + ".values.csv";
  const auto summary = prefix + ".summary.json";
  write_text(values, to_string_via([&](std::ostream& o) { experiments::write_values_csv(o, reports); }));
  write_text(summary, experiments::summary_json(reports, config).dump(2) + "\n");
  run.outputs.push_back(values);
  run.outputs.push_back(summary);
  for (const auto& r : reports) {
    std::cerr << fmt::format("{} {}{}{} size={} median={:.4f} mean={:.4f} p5={:.4f} p95={:.4f}\n", r.kind,
                             r.series, r.period.empty() ? "" : " ", r.period, r.sample_size,
                             r.summary.median, r.summary.mean, r.summary.p5, r.summary.p95);
  }
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Meter/semantics corpus toolkit: scansion, simplification, topics, clustering experiments"};
  app.name("halo");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key=value configuration file (flags take precedence)");
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (1 = serial reference path)")->capture_default_str();
  app.add_flag("--paper-scale", common.paper_scale, "Use 10,000 sampling iterations");

  Run r;
  std::function<void()> action;

  // ingest
  std::string in_path, out_path;
  std::size_t min_tokens = corpus::kDefaultMinTokens, max_tokens = corpus::kDefaultMaxTokens;
  auto* ingest = app.add_subcommand("ingest", "Load, validate and size-filter a corpus");
  ingest->add_option("--in", in_path, "Input corpus (JSON Lines)")->required();
  ingest->add_option("--out", out_path, "Filtered corpus output")->required();
  ingest->add_option("--min-tokens", min_tokens)->capture_default_str();
  ingest->add_option("--max-tokens", max_tokens)->capture_default_str();
  ingest->callback([&] {
    action = [&] {
      auto c = corpus::load_corpus(in_path, &r.warnings);
      auto f = corpus::filter_by_size(c, min_tokens, max_tokens);
      corpus::save_corpus(out_path, f);
      r.inputs = {in_path};
      r.outputs = {out_path};
      std::cerr << fmt::format("loaded {} poems, kept {} within [{}, {}] tokens\n", c.size(), f.size(),
                               min_tokens, max_tokens);
    };
  });

  // scan
  double threshold = scansion::kDefaultThreshold;
  auto* scan = app.add_subcommand("scan", "Assign metrical labels and form codes");
  scan->add_option("--in", in_path, "Corpus (JSON Lines)")->required();
  scan->add_option("--out", out_path, "Label CSV output")->required();
  scan->add_option("--threshold", threshold, "Share of lines that must match")->capture_default_str();
  scan->callback([&] {
    action = [&] {
      auto c = corpus::load_corpus(in_path, &r.warnings);
      const auto templates = scansion::default_templates();
      const auto rows = scansion::label_corpus(c, templates, threshold);
      write_text(out_path, to_string_via([&](std::ostream& o) { scansion::write_label_csv(o, rows); }));
      std::size_t labeled = 0;
      for (const auto& row : rows) labeled += row.label ? 1 : 0;
      if (labeled == 0) r.warnings.push_back("no poem received a metrical label");
      r.inputs = {in_path};
      r.outputs = {out_path};
      std::cerr << fmt::format("labeled {} of {} poems\n", labeled, rows.size());
    };
  });

  // simplify
  std::string report_path, vectors_in, vectors_out;
  std::vector<std::string> pos_tags = {"ADJ", "NOUN", "VERB"};
  std::size_t top_n = simplify::kDefaultTopN, neighbors = simplify::kDefaultNeighbors;
  simplify::EmbeddingConfig emb;
  auto* simp = app.add_subcommand("simplify", "Replace rare lemmas with frequent embedding neighbors");
  simp->add_option("--in", in_path, "Corpus (JSON Lines)")->required();
  simp->add_option("--out", out_path, "Simplified corpus output")->required();
  simp->add_option("--report", report_path, "Replacement report CSV");
  simp->add_option("--top-n", top_n, "Size of the frequent-lemma list")->capture_default_str();
  simp->add_option("--neighbors", neighbors, "Neighbors searched per rare lemma")->capture_default_str();
  simp->add_option("--window", emb.window)->capture_default_str();
  simp->add_option("--dim", emb.dim)->capture_default_str();
  simp->add_option("--min-count", emb.min_count, "Minimum frequency for an embedding")->capture_default_str();
  simp->add_option("--vectors", vectors_in, "Import vectors instead of training");
  simp->add_option("--save-vectors", vectors_out, "Write the trained vectors");
  simp->add_option("--pos", pos_tags, "Admitted POS tags")->delimiter(',')->capture_default_str();
  simp->callback([&] {
    action = [&] {
      auto c = corpus::load_corpus(in_path, &r.warnings);
      const auto filter = parse_pos(pos_tags);
      const auto vocab = simplify::build_vocab(c, filter, top_n);
      r.inputs = {in_path};
      const auto model = vectors_in.empty() ? simplify::train_embeddings(c, filter, emb)
                                            : simplify::load_vectors(vectors_in);
      if (!vectors_in.empty()) r.inputs.push_back(vectors_in);
      auto res = simplify::simplify(c, vocab, model, filter, neighbors, parallel_from(common));
      corpus::save_corpus(out_path, res.corpus);
      r.outputs = {out_path};
      if (!report_path.empty()) {
        write_text(report_path, to_string_via([&](std::ostream& o) { simplify::write_report_csv(o, res.report); }));
        r.outputs.push_back(report_path);
      }
      if (!vectors_out.empty()) {
        write_text(vectors_out, to_string_via([&](std::ostream& o) { simplify::write_vectors(o, model); }));
        r.outputs.push_back(vectors_out);
      }
      std::cerr << fmt::format("replaced {} tokens ({} lemmas), kept {} rare tokens; vocabulary {} -> {}\n",
                               res.report.replaced_tokens, res.report.replacements.size(),
                               res.report.retained_rare_tokens, res.report.vocab_before, res.report.vocab_after);
    };
  });

  // train-lda
  std::string model_path, theta_path;
  topics::TopicConfig tc;
  double alpha = 0.0;
  std::size_t lda_min_count = topics::kDefaultMinCount;
  auto* lda = app.add_subcommand("train-lda", "Train an LDA topic model by collapsed Gibbs sampling");
  lda->add_option("--in", in_path, "Corpus (JSON Lines)")->required();
  lda->add_option("--model", model_path, "Model output")->required();
  lda->add_option("--theta", theta_path, "Per-poem topic proportions CSV")->required();
  lda->add_option("--topics", tc.topics)->capture_default_str();
  lda->add_option("--alpha", alpha, "Document-topic prior (0 = 50/K)")->capture_default_str();
  lda->add_option("--beta", tc.beta)->capture_default_str();
  lda->add_option("--iterations", tc.iterations)->capture_default_str();
  lda->add_option("--burn-in", tc.burn_in)->capture_default_str();
  lda->add_option("--lag", tc.sample_lag)->capture_default_str();
  lda->add_option("--seed", tc.seed)->capture_default_str();
  lda->add_option("--min-count", lda_min_count, "Minimum lemma frequency")->capture_default_str();
  lda->add_option("--pos", pos_tags, "Admitted POS tags")->delimiter(',')->capture_default_str();
  lda->callback([&] {
    action = [&] {
      auto c = corpus::load_corpus(in_path, &r.warnings);
      if (alpha > 0.0) tc.alpha = alpha;
      const auto docs = topics::build_documents(c, parse_pos(pos_tags), lda_min_count);
      for (const auto& id : docs.dropped) {
        r.warnings.push_back(fmt::format("poem '{}' has no in-vocabulary lemma; left out of the model", id));
      }
      const auto model = topics::train_lda(docs, tc);
      write_text(model_path, to_string_via([&](std::ostream& o) { topics::write_model(o, model); }));
      write_text(theta_path, to_string_via([&](std::ostream& o) { topics::write_theta_csv(o, model); }));
      r.inputs = {in_path};
      r.outputs = {model_path, theta_path};
      std::cerr << fmt::format("trained K={} on {} documents, V={}, {} tokens\n", model.topics,
                               model.doc_count(), model.vocab_size(), docs.total_tokens());
    };
  });

  // experiments
  std::string labels_path, corpus_path, prefix;
  ExperimentOptions eo;

  auto* h1 = app.add_subcommand("h1", "Same-meter sample clustering (ARI distribution)");
  h1->add_option("--theta", theta_path, "Topic proportions CSV")->required();
  h1->add_option("--labels", labels_path, "Label CSV from scan")->required();
  h1->add_option("--out", prefix, "Output prefix")->required();
  eo.add_to(h1, false);
  h1->callback([&] {
    action = [&] {
      const auto cfg = eo.resolve(common);
      const auto report = experiments::run_h1(experiments::load_theta_csv(theta_path),
                                              experiments::load_labels_csv(labels_path), cfg);
      r.inputs = {theta_path, labels_path};
      write_reports(r, prefix, std::span(&report, 1), cfg);
    };
  });

  auto* h2 = app.add_subcommand("h2", "Period-split clustering");
  h2->add_option("--theta", theta_path)->required();
  h2->add_option("--labels", labels_path)->required();
  h2->add_option("--corpus", corpus_path, "Corpus supplying publication years")->required();
  h2->add_option("--out", prefix, "Output prefix")->required();
  eo.add_to(h2, true);
  h2->callback([&] {
    action = [&] {
      const auto cfg = eo.resolve(common);
      const auto res = experiments::run_h2(experiments::load_theta_csv(theta_path),
                                           experiments::load_labels_csv(labels_path),
                                           corpus::load_corpus(corpus_path, &r.warnings), cfg);
      r.inputs = {theta_path, labels_path, corpus_path};
      const experiments::ExperimentReport both[] = {res.early, res.late};
      write_reports(r, prefix, both, cfg);
    };
  });

  auto* h3 = app.add_subcommand("h3", "Cross-period SVM classification");
  h3->add_option("--theta", theta_path)->required();
  h3->add_option("--labels", labels_path)->required();
  h3->add_option("--corpus", corpus_path, "Corpus supplying publication years")->required();
  h3->add_option("--out", prefix, "Output prefix")->required();
  eo.add_to(h3, true);
  h3->add_option("--sample-sizes", eo.sample_sizes, "Sample sizes to evaluate")->delimiter(',')->capture_default_str();
  h3->add_flag("--shuffle-test-labels", eo.shuffle_test_labels, "Chance-level control");
  h3->add_option("--svm-c", eo.svm_c, "Soft-margin penalty")->capture_default_str();
  h3->callback([&] {
    action = [&] {
      const auto cfg = eo.resolve(common);
      const auto reports = experiments::run_h3(experiments::load_theta_csv(theta_path),
                                               experiments::load_labels_csv(labels_path),
                                               corpus::load_corpus(corpus_path, &r.warnings), cfg);
      r.inputs = {theta_path, labels_path, corpus_path};
      write_reports(r, prefix, reports, cfg);
    };
  });

  auto* posb = app.add_subcommand("pos-baseline", "H1 protocol on POS frequency vectors");
  posb->add_option("--corpus", corpus_path)->required();
  posb->add_option("--labels", labels_path)->required();
  posb->add_option("--out", prefix, "Output prefix")->required();
  posb->add_option("--pos", pos_tags, "Admitted POS tags")->delimiter(',')->capture_default_str();
  eo.add_to(posb, false);
  posb->callback([&] {
    action = [&] {
      const auto cfg = eo.resolve(common);
      const auto report = experiments::pos_baseline(corpus::load_corpus(corpus_path, &r.warnings),
                                                    experiments::load_labels_csv(labels_path),
                                                    parse_pos(pos_tags), cfg);
      r.inputs = {corpus_path, labels_path};
      write_reports(r, prefix, std::span(&report, 1), cfg);
    };
  });

  std::size_t top_topics = 5;
  auto* dist = app.add_subcommand("distinctive-topics", "Per-meter topics with the highest z-scores");
  dist->add_option("--model", model_path)->required();
  dist->add_option("--labels", labels_path)->required();
  dist->add_option("--out", out_path, "CSV output")->required();
  dist->add_option("--top", top_topics)->capture_default_str();
  dist->callback([&] {
    action = [&] {
      std::ifstream min(model_path);
      if (!min) throw DataError(fmt::format("cannot open model '{}'", model_path));
      const auto model = topics::read_model(min);
      const auto d = topics::distinctive_topics(model, experiments::load_labels_csv(labels_path), top_topics);
      std::ostringstream o;
      o << "meter,rank,topic,z,top_words\n";
      for (const auto& m : d.meters) {
        const auto& list = d.by_meter.at(m);
        for (std::size_t i = 0; i < list.size(); ++i) {
          std::string words;
          for (const auto& w : list[i].top_words) words += (words.empty() ? "" : " ") + w;
          o << m << ',' << i + 1 << ',' << list[i].topic << ',' << fmt::format("{:.6f}", list[i].z) << ','
            << csv::escape(words) << '\n';
        }
      }
      write_text(out_path, o.str());
      r.inputs = {model_path, labels_path};
      r.outputs = {out_path};
    };
  });

  auto* bip = app.add_subcommand("biplot", "PCA biplot data for one H1 sampling");
  bip->add_option("--theta", theta_path)->required();
  bip->add_option("--labels", labels_path)->required();
  bip->add_option("--out", prefix, "Output prefix")->required();
  bip->add_option("--iteration", eo.biplot_iteration, "H1 iteration to reproduce")->capture_default_str();
  eo.add_to(bip, false);
  bip->callback([&] {
    action = [&] {
      const auto cfg = eo.resolve(common);
      const auto b = experiments::biplot(experiments::load_theta_csv(theta_path),
                                         experiments::load_labels_csv(labels_path), cfg);
      const auto pts = prefix + ".points.csv";
      const auto lds = prefix + ".loadings.csv";
      write_text(pts, to_string_via([&](std::ostream& o) { experiments::write_biplot_csv(o, b); }));
      write_text(lds, to_string_via([&](std::ostream& o) { experiments::write_loadings_csv(o, b); }));
      r.inputs = {theta_path, labels_path};
      r.outputs = {pts, lds};
      std::cerr << fmt::format("iteration {} ARI {:.4f}; explained variance {:.3f}, {:.3f}\n", b.iteration,
                               b.ari, b.pca.explained[0], b.pca.explained.size() > 1 ? b.pca.explained[1] : 0.0);
    };
  });

  // synth
  std::string preset = "planted", truth_path;
  std::size_t synth_meters = 3;
  double base = 0.1, boost = 0.5;
  synth::SynthSpec ss;
  auto* syn = app.add_subcommand("synth", "Generate a synthetic corpus with known ground truth");
  syn->add_option("--preset", preset, "planted | null")->check(CLI::IsMember({"planted", "null"}))->capture_default_str();
  syn->add_option("--out", out_path, "Corpus output (JSON Lines)")->required();
  syn->add_option("--truth", truth_path, "Ground-truth CSV output")->required();
  syn->add_option("--meters", synth_meters)->capture_default_str();
  syn->add_option("--base", base, "Uniform prior component")->capture_default_str();
  syn->add_option("--boost", boost, "Extra prior mass on a meter's own topics")->capture_default_str();
  syn->add_option("--poems-per-meter", ss.poems_per_meter)->capture_default_str();
  syn->add_option("--drift", ss.drift, "Late-period mixing toward a shuffled prior")->capture_default_str();
  syn->add_option("--omission", ss.omission_rate, "Stress omission rate on strong positions")->capture_default_str();
  syn->add_option("--undated", ss.undated_fraction, "Share of poems without a year")->capture_default_str();
  syn->add_option("--boundary", ss.boundary_year)->capture_default_str();
  syn->add_option("--seed", ss.seed)->capture_default_str();
  syn->callback([&] {
    action = [&] {
      synth::SynthSpec spec = preset == "null" ? synth::null_spec(synth_meters)
                                               : synth::planted_halo_spec(synth_meters, base, boost);
      spec.poems_per_meter = ss.poems_per_meter;
      spec.drift = ss.drift;
      spec.omission_rate = ss.omission_rate;
      spec.undated_fraction = ss.undated_fraction;
      spec.boundary_year = ss.boundary_year;
      spec.seed = ss.seed;
      const auto g = synth::generate(spec);
      corpus::save_corpus(out_path, g.corpus);
      write_text(truth_path, to_string_via([&](std::ostream& o) { synth::write_truth_csv(o, g.truth); }));
      r.outputs = {out_path, truth_path};
      std::cerr << fmt::format("generated {} poems over {} meters\n", g.corpus.size(), g.truth.meters.size());
    };
  });

  std::vector<std::string> argv_copy(args.begin(), args.end());
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  r.command = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    action();
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(r, *sub, common, argv_copy, secs);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args);
}

}  // namespace halo::cli
