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

namespace hermiteq {

/**
 * Welford running moments: M_k tracks the mean, S_k the sum of squared
 * deviations. The update is cancellation-resistant even when the data sit on
 * a huge offset. The sample standard deviation is defined from count >= 2.
 */
struct running_moments {
  std::uint64_t count = 0;
  double m = 0.0;
  double s = 0.0;

  void update(double x);
  double mean() const;
  double sample_variance() const;
  double sample_std() const;
  bool std_ready() const { return count >= 2; }
};

/**
 * EWMA moments for the dynamic regime. The first observation sets
 * mu = x_1 and v = 1; afterwards
 *   mu_k = (1-lambda) mu_{k-1} + lambda x_k
 *   v_k  = (1-lambda) v_{k-1}  + lambda (x_k - mu_k)^2
 * with mu_k in the variance update being the just-updated mean. v stays
 * non-negative under every update.
 */
struct exp_moments {
  double lambda = 0.05;
  std::uint64_t count = 0;
  double mu = 0.0;
  double v = 1.0;

  explicit exp_moments(double lambda_weight);
  void update(double x);
  double mean() const { return mu; }
  double variance() const { return v; }
  double std_dev() const;
};

/// (x - mu) / sigma; sigma must be positive.
double standardize(double x, double mu, double sigma);
/// sigma * z + mu; inverse of standardize.
double destandardize(double z, double mu, double sigma);

}  // namespace hermiteq
