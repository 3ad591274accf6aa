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

#include <string>

#include "hermiteq/coefficients.hpp"
#include "hermiteq/density.hpp"

namespace hermiteq {

/// Settings for CDF inversion: Newton with a grid-bracketed bisection
/// fallback. The bracket and grid live in standardized units.
struct root_finder_settings {
  double tolerance = 1e-9;     // target |F(x) - p|
  int max_newton_iters = 50;
  double bracket_low = -12.0;
  double bracket_high = 12.0;
  int grid_points = 64;        // fallback bracketing grid cells
  int refine_grid_points = 256;  // density floor check in refine()

  void validate() const;
  bool operator==(const root_finder_settings&) const = default;
};

/**
 * Full configuration of a streaming estimator. The defaults are the
 * recommended operating point: N = 6 terms, the alternative CDF form,
 * online standardization on, and lambda = 0.05 when running exponentially
 * weighted.
 */
struct estimator_config {
  int n_terms = 6;
  update_mode mode = update_mode::static_mean;
  double lambda = 0.05;  // ewgh only
  bool standardize = true;
  cdf_variant variant = cdf_variant::alternative;
  root_finder_settings root_finder{};

  void validate() const;
  bool operator==(const estimator_config&) const = default;

  /// Flat key-value JSON document.
  std::string to_json() const;
  static estimator_config from_json(const std::string& text);
};

}  // namespace hermiteq
