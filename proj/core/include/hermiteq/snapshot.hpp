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
#include <memory>
#include <string>

#include "hermiteq/coefficients.hpp"
#include "hermiteq/config.hpp"
#include "hermiteq/density.hpp"

namespace hermiteq {

/// The location/scale mapping a snapshot uses to move between original data
/// units and the standardized units the expansion lives in.
struct scale_state {
  double mu = 0.0;
  double sigma = 1.0;
  std::uint64_t count = 0;

  bool operator==(const scale_state&) const = default;
};

/**
 * Immutable plug-in state: coefficients, the moments in force when the
 * snapshot was taken, and the precomputed CDF table. Queries are repeatable
 * bit-for-bit and safe to run from many threads at once.
 *
 * Original-unit queries map through the scale state: cdf_at(x) evaluates the
 * standardized CDF at (x - mu)/sigma, and pdf_at carries the 1/sigma
 * Jacobian. The *_raw CDF values are the closed forms as derived and may
 * fall slightly outside [0, 1]; cdf_at clamps for reporting.
 */
class distribution_snapshot {
 public:
  distribution_snapshot(coefficient_vector coefficients, scale_state moments,
                        estimator_config config,
                        std::shared_ptr<const cdf_coefficient_table> table);

  double pdf_at(double x) const;
  double cdf_at(double x) const;  // clamped to [0, 1]
  double cdf_raw_at(double x) const { return cdf_raw_at(x, config_.variant); }
  double cdf_raw_at(double x, cdf_variant variant) const;

  // Standardized-unit access, used by the root finder.
  double standardized_pdf(double z) const;
  double standardized_cdf_raw(double z) const;
  double to_original(double z) const;
  double to_standardized(double x) const;

  const coefficient_vector& coefficients() const { return coefficients_; }
  const scale_state& moments() const { return moments_; }
  const estimator_config& config() const { return config_; }
  const cdf_coefficient_table& table() const { return *table_; }

  std::string to_json() const;
  static distribution_snapshot from_json(const std::string& text);

 private:
  coefficient_vector coefficients_;
  scale_state moments_;
  estimator_config config_;
  std::shared_ptr<const cdf_coefficient_table> table_;
};

}  // namespace hermiteq
