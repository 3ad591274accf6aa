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

#include <optional>

#include "hermiteq/config.hpp"
#include "hermiteq/snapshot.hpp"

namespace hermiteq {

/**
 * Outcome of a quantile query. value is present exactly when the inversion
 * converged and, if refinement was requested, the refined estimator did not
 * reject it. A rejection is a value-level outcome, not an error.
 */
struct quantile_result {
  std::optional<double> value;
  bool converged = false;
  bool refined_rejected = false;
};

/**
 * Invert the snapshot's raw CDF at probability p by Newton iteration with a
 * grid-bracketed bisection fallback.
 *
 * Newton runs from warm_start_z (a standardized-unit initial guess, usually
 * the previous converged root for the same p) or from 0. It falls back to
 * bisection when the derivative magnitude drops below 1e-12, an iterate
 * leaves the bracket, or the iteration budget runs out. The fallback scans
 * the bracket grid and bisects the leftmost sign-changing cell, matching the
 * infimum definition q(p) = inf{x : F(x) >= p} when the raw CDF is not
 * monotone. With no sign change on the grid the result is non-converged;
 * no number is fabricated. Converged results satisfy
 * |F(x) - p| <= settings.tolerance and are reported in original data units.
 */
quantile_result invert_cdf(const distribution_snapshot& snapshot, double p,
                           const root_finder_settings& settings,
                           std::optional<double> warm_start_z = std::nullopt);

/**
 * Guarded estimate for when the true quantile is known to lie in
 * [x_min, x_max] with density at least d there. Keeps the estimate only if
 * it falls inside the bounds and the estimated density clears d on a dense
 * grid (settings.refine_grid_points points) across [x_min, x_max]; otherwise
 * the result comes back with refined_rejected set and no value.
 */
quantile_result refine(quantile_result result, const distribution_snapshot& snapshot,
                       double x_min, double x_max, double d);

/// F(x) < p on the snapshot's configured variant, evaluated raw. The cheap
/// membership test for when only the comparison is needed, not the quantile.
bool is_below_quantile(const distribution_snapshot& snapshot, double x, double p);

}  // namespace hermiteq
