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
#include <map>
#include <memory>

#include "hermiteq/config.hpp"
#include "hermiteq/quantile.hpp"
#include "hermiteq/snapshot.hpp"
#include "hermiteq/standardize.hpp"

namespace hermiteq {

/**
 * One-pass estimator of a stream's distribution function and quantiles.
 *
 * Each observation first updates the online moments, is then standardized
 * with the just-updated moments (when standardization is on), and finally
 * feeds the coefficient update: running average in static mode, EWMA in
 * ewgh mode. Work per observation is constant; nothing ever loops over the
 * history. Queries answer from an immutable snapshot so a single writer can
 * keep observing while other threads read earlier snapshots.
 *
 * Until the Welford std is defined (static mode, count < 2) observations are
 * standardized with sigma = 1 and mu = the running mean; sigma is floored at
 * 1e-12 so constant prefixes of a stream cannot divide by zero.
 */
class streaming_estimator {
 public:
  explicit streaming_estimator(estimator_config config);

  /// Absorb one observation. Non-finite x throws std::domain_error and
  /// leaves the state untouched.
  void observe(double x);

  std::uint64_t count() const { return coefficients_.count(); }
  const estimator_config& config() const { return config_; }

  /// Immutable copy of the current state; throws std::logic_error before the
  /// first observation.
  distribution_snapshot snapshot() const;

  /// Invert the current CDF at p. Warm-starts Newton from the previous
  /// converged root for the same p, exploiting stream continuity.
  quantile_result quantile(double p);

  double cdf_at(double x) const;  // clamped
  double pdf_at(double x) const;

 private:
  scale_state current_scale() const;

  estimator_config config_;
  coefficient_vector coefficients_;
  running_moments welford_;
  exp_moments ewma_;
  std::shared_ptr<const cdf_coefficient_table> table_;
  std::map<double, double> warm_starts_;  // p -> standardized root
};

/// Number of most recent observations carrying 99.9% of the EWMA weight:
/// round(log 0.001 / log(1 - lambda)). Defined for lambda in (0, 1).
int effective_window(double lambda);

}  // namespace hermiteq
