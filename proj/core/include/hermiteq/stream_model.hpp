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
#include <random>
#include <string>

namespace hermiteq {

/// A concrete univariate distribution used as a stream segment and as ground
/// truth in verification checks.
struct dist_spec {
  enum class family { normal, exponential, chi_squared, pareto };

  family fam = family::normal;
  double p1 = 0.0;  // normal: mean; exponential: mean; chi_squared: dof; pareto: alpha
  double p2 = 1.0;  // normal: sd; pareto: x_min

  static dist_spec normal(double mean, double sd);
  static dist_spec exponential(double mean);
  static dist_spec chi_squared(double dof);
  static dist_spec pareto(double alpha, double x_min);

  double draw(std::mt19937_64& rng) const;
  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double p) const;
  double mean() const;
  double variance() const;
  /// Left edge of the support (0 for the positive-support families,
  /// x_min for pareto, -infinity for normal).
  double support_low() const;
};

/**
 * Generators for the simulation scenarios: i.i.d. streams, streams whose
 * parameters drift linearly with the update index, and a change point that
 * switches distribution mid-stream. Update indices j are 1-based.
 */
struct stream_model {
  enum class kind {
    chi_squared_5,
    exponential_unit,
    normal_drift,
    exponential_drift,
    change_point,
    pareto
  };

  kind k = kind::chi_squared_5;
  double drift_rate = 0.006;
  // change_point: s+1 observations from segment1, then segment2.
  dist_spec segment1 = dist_spec::normal(0.0, 1.0);
  dist_spec segment2 = dist_spec::normal(5.0, 1.0);
  std::uint64_t change_s = 500;
  double pareto_alpha = 3.0;
  double pareto_xmin = 1.0;

  static stream_model chi_squared5();
  static stream_model exponential_unit();
  static stream_model normal_drift(double rate = 0.006);
  static stream_model exponential_drift(double rate = 0.006);
  static stream_model change_point(dist_spec f1, dist_spec f2, std::uint64_t s);
  static stream_model pareto(double alpha, double x_min);

  double draw(std::mt19937_64& rng, std::uint64_t j) const;
  /// Exact quantile of the distribution in force at update j.
  double true_quantile(std::uint64_t j, double p) const;
  double mean_at(std::uint64_t j) const;
  double variance_at(std::uint64_t j) const;
  /// The distribution in force at update j (drifting kinds: the j-frozen one).
  dist_spec distribution_at(std::uint64_t j) const;

  std::string name() const;
  static stream_model from_name(const std::string& name);
};

}  // namespace hermiteq
