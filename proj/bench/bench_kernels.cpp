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

// Serial reference path vs the OpenMP path for the data-parallel kernels.
//
//   ./bench_kernels --benchmark_filter=H1

#include <benchmark/benchmark.h>

#include "halo/experiments.hpp"
#include "halo/simplify.hpp"
#include "pipeline.hpp"

using namespace halo;

namespace {

const testing::Pipeline& pipeline() {
  static const testing::Pipeline p = [] {
    auto spec = synth::planted_halo_spec(3);
    spec.poems_per_meter = 600;
    return testing::run_pipeline(spec, testing::quick_lda(20, 100));
  }();
  return p;
}

ParallelOptions mode(const benchmark::State& state) {
  ParallelOptions o;
  o.execution = state.range(0) ? Execution::kParallel : Execution::kSerial;
  return o;
}

void BM_H1(benchmark::State& state) {
  const auto& p = pipeline();
  experiments::ExperimentConfig c;
  c.min_poems = 300;
  c.iterations = 64;
  c.parallel = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(experiments::run_h1(p.features, p.labels, c).values.data());
  }
  state.SetLabel(state.range(0) ? "openmp" : "serial");
}
BENCHMARK(BM_H1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Replacements(benchmark::State& state) {
  static const auto setup = [] {
    const auto& corpus = pipeline().generated.corpus;
    const auto filter = simplify::default_pos_filter();
    simplify::EmbeddingConfig ec;
    ec.dim = 50;
    return std::make_pair(simplify::build_vocab(corpus, filter, 60),
                          simplify::train_embeddings(corpus, filter, ec));
  }();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simplify::replacement_map(setup.first, setup.second, simplify::kDefaultNeighbors, mode(state)).size());
  }
  state.SetLabel(state.range(0) ? "openmp" : "serial");
}
BENCHMARK(BM_Replacements)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
