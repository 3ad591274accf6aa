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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hermiteq/config.hpp"
#include "hermiteq/stream_model.hpp"

namespace hermiteq {

/// Which estimator an experiment drives: the expansion-based one, or the
/// sliding-window empirical-quantile comparator whose window is the
/// effective window of the configured lambda.
enum class algorithm_kind { gauss_hermite, sliding_window };

std::string to_string(algorithm_kind a);
algorithm_kind algorithm_from_string(const std::string& s);

/**
 * A multi-run RMSE experiment: stream `observations` draws through a fresh
 * estimator per run, record quantile estimates at every stride-th step (the
 * final step always), and aggregate RMSE with 95% percentile-bootstrap
 * confidence intervals across runs. Runs are seeded seed+1+run_index, so
 * results are reproducible and independent of scheduling.
 */
struct experiment_spec {
  stream_model model;
  estimator_config config;
  algorithm_kind algorithm = algorithm_kind::gauss_hermite;
  std::vector<double> quantiles{0.5, 0.9, 0.99};
  std::uint64_t observations = 4000;
  int runs = 1000;
  int bootstrap_resamples = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stride = 1;
  int threads = 0;

  void validate() const;
};

struct rmse_point {
  std::uint64_t step = 0;
  double rmse = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct rmse_curve {
  double p = 0.5;
  std::vector<rmse_point> points;
};

struct experiment_result {
  std::vector<rmse_curve> curves;  // one per requested quantile, same order
  std::uint64_t non_converged = 0;  // inversions that failed; last estimate carried forward
  std::uint64_t unusable = 0;       // recorded steps with no estimate at all (excluded)
  double elapsed_seconds = 0.0;

  /// CSV with fixed header p,j,rmse,ci_low,ci_high; %.17g number formatting.
  std::string to_csv() const;
  /// Config echo, counters and timing.
  std::string summary_json(const experiment_spec& spec) const;
};

experiment_result run_experiment(const experiment_spec& spec);

/**
 * Out-of-sample coverage frequencies: the fraction of steps at which the
 * next observation falls below the current online p-quantile estimate. Steps
 * whose inversion has not converged are excluded and reported.
 */
struct coverage_result {
  std::vector<double> quantiles;
  std::vector<double> frequency;
  std::vector<std::uint64_t> counted;
  std::vector<std::uint64_t> excluded;

  std::string to_json() const;
};

coverage_result coverage_test(const stream_model& model, const estimator_config& config,
                              std::span<const double> quantiles, std::uint64_t observations,
                              std::uint64_t seed);
coverage_result coverage_test(std::span<const double> stream, const estimator_config& config,
                              std::span<const double> quantiles);

}  // namespace hermiteq
