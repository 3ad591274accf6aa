/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <random>

#include "hermiteq/estimator.hpp"

namespace {

using namespace hermiteq;

void BM_ObserveStatic(benchmark::State& state) {
  estimator_config cfg;
  cfg.n_terms = static_cast<int>(state.range(0));
  streaming_estimator est(cfg);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto _ : state) {
    est.observe(normal(rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ObserveStatic)->Arg(6)->Arg(12)->Arg(24);

void BM_ObserveEwgh(benchmark::State& state) {
  estimator_config cfg;
  cfg.n_terms = static_cast<int>(state.range(0));
  cfg.mode = update_mode::ewgh;
  cfg.lambda = 0.05;
  streaming_estimator est(cfg);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto _ : state) {
    est.observe(normal(rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ObserveEwgh)->Arg(6)->Arg(12);

void BM_CdfQuery(benchmark::State& state) {
  estimator_config cfg;
  cfg.n_terms = static_cast<int>(state.range(0));
  streaming_estimator est(cfg);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) est.observe(normal(rng));
  const auto snap = est.snapshot();
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(snap.cdf_raw_at(x));
    x += 0.001;
    if (x > 3.0) x = -3.0;
  }
}
BENCHMARK(BM_CdfQuery)->Arg(6)->Arg(12);

void BM_QuantileQuery(benchmark::State& state) {
  estimator_config cfg;
  streaming_estimator est(cfg);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) est.observe(normal(rng));
  for (auto _ : state) {
    auto res = est.quantile(0.9);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_QuantileQuery);

// Per-update cost must not grow with the stream position.
void BM_ObserveDeepIntoStream(benchmark::State& state) {
  estimator_config cfg;
  streaming_estimator est(cfg);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::int64_t i = 0; i < state.range(0); ++i) est.observe(normal(rng));
  for (auto _ : state) {
    est.observe(normal(rng));
  }
}
BENCHMARK(BM_ObserveDeepIntoStream)->Arg(10000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
