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

#include <span>
#include <string>
#include <vector>

#include "hermiteq/coefficients.hpp"

namespace hermiteq {

/**
 * Which closed form of the estimated CDF a query evaluates.
 *
 * full_line integrates the truncated expansion from -infinity; alternative
 * replaces the expansion's total integral with exactly one, which tends to
 * behave better on real data; positive_support integrates from zero and is
 * only defined for x >= 0.
 */
enum class cdf_variant { full_line, alternative, positive_support };

std::string to_string(cdf_variant v);
cdf_variant cdf_variant_from_string(const std::string& s);

/**
 * Precomputed triangular table behind the closed-form CDF estimators.
 *
 * Entry (k, l), 0 <= l <= floor(k/2) <= floor(N/2), carries
 * k! (-1)^l 2^{3k/2 - 3l - 1} / (l! (k-2l)! sqrt(pi)) along with the gamma
 * parameter a_kl = (k - 2l + 1)/2 and Gamma(a_kl). A CDF query then costs one
 * incomplete-gamma evaluation per table entry and nothing else transcendental
 * beyond what the entry caches. Orders up to 32 stay finite.
 */
class cdf_coefficient_table {
 public:
  explicit cdf_coefficient_table(int n_terms);

  int order() const { return n_; }

  /// Raw CDF value for the given variant; may fall slightly outside [0, 1].
  /// positive_support with x < 0 throws std::domain_error.
  double cdf(std::span<const double> a_hat, double x, cdf_variant variant) const;

 private:
  int n_;
  std::vector<double> coeff_;       // c_kl including sign and 1/sqrt(pi)
  std::vector<double> gamma_at_a_;  // Gamma(a_kl)
  std::vector<double> a_param_;     // a_kl
  std::vector<std::size_t> row_;    // offset of row k
};

/// Truncated expansion density sum_k a_hat_k H_k(x) Z(x); may be negative.
double gauss_hermite_pdf(std::span<const double> a_hat, double x);

/// Truncate a raw CDF value into [0, 1] for consumer-facing reporting.
double clamp_probability(double p);

}  // namespace hermiteq
