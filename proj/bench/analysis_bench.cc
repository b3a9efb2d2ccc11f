/*
 * Copyright 2026 The fmselect Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference kernels against the OpenMP and solver-backed versions.

#include <benchmark/benchmark.h>

#include <random>

#include "fmselect/analysis.h"
#include "fmselect/recommender.h"
#include "random_model.h"

namespace fmselect {
namespace {

// A fixed model with exactly `features` features and a few constraints.
FeatureModel bench_model(std::size_t features) {
  for (std::uint64_t seed = 1;; ++seed) {
    std::mt19937_64 rng(seed);
    testing::RandomModelOptions o;
    o.min_features = features;
    o.max_features = features;
    o.attributes = 0;
    FeatureModel m = testing::random_model(rng, o);
    if (m.size() == features && count_configurations(m, {}) > 0) return m;
  }
}

void BM_EnumerateSerial(benchmark::State& state) {
  const FeatureModel m = bench_model(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::enumerate_configurations(m, {}));
  }
}

void BM_EnumerateParallel(benchmark::State& state) {
  const FeatureModel m = bench_model(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_configurations(m, {}, SIZE_MAX, Execution::kParallel));
  }
}

void BM_PropagateBruteForce(benchmark::State& state) {
  const FeatureModel m = bench_model(static_cast<std::size_t>(state.range(0)));
  const PartialConfiguration p = PartialConfiguration::unknown(m);
  for (auto _ : state) benchmark::DoNotOptimize(reference::propagate(m, p));
}

void BM_PropagateSolverSerial(benchmark::State& state) {
  const FeatureModel m = bench_model(static_cast<std::size_t>(state.range(0)));
  const PartialConfiguration p = PartialConfiguration::unknown(m);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(m, p, Execution::kSerial));
}

void BM_PropagateSolverParallel(benchmark::State& state) {
  const FeatureModel m = bench_model(static_cast<std::size_t>(state.range(0)));
  const PartialConfiguration p = PartialConfiguration::unknown(m);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(m, p, Execution::kParallel));
}

void BM_RecommendCaseStudy(benchmark::State& state) {
  const KnowledgeBase kb = load_knowledge_base();
  const ModelingAssumptions a{299, 13, Prediction::kCategory, true, false, {}, false};
  for (auto _ : state) benchmark::DoNotOptimize(recommend(kb, a));
}

BENCHMARK(BM_EnumerateSerial)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropagateBruteForce)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropagateSolverSerial)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropagateSolverParallel)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecommendCaseStudy)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace fmselect

BENCHMARK_MAIN();
