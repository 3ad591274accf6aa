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

#include "hermiteq/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hermiteq/special_functions.hpp"

namespace hermiteq {

namespace {

constexpr double kLogPi = 1.1447298858494001741434273513530587116;
constexpr double kLog2 = 0.6931471805599453094172321214581765681;

}  // namespace

std::string to_string(cdf_variant v) {
  switch (v) {
    case cdf_variant::full_line:
      return "full_line";
    case cdf_variant::alternative:
      return "alternative";
    case cdf_variant::positive_support:
      return "positive_support";
  }
  throw std::logic_error("unreachable cdf_variant");
}

cdf_variant cdf_variant_from_string(const std::string& s) {
  if (s == "full_line") return cdf_variant::full_line;
  if (s == "alternative") return cdf_variant::alternative;
  if (s == "positive_support") return cdf_variant::positive_support;
  throw std::invalid_argument("unknown cdf variant: " + s);
}

cdf_coefficient_table::cdf_coefficient_table(int n_terms) : n_(n_terms) {
  if (n_terms < 0) throw std::domain_error("cdf table: order must be non-negative");
  if (n_terms > 32) throw std::domain_error("cdf table: order beyond 32 is unsupported");
  row_.resize(static_cast<std::size_t>(n_terms) + 2, 0);
  for (int k = 0; k <= n_terms; ++k) {
    row_[static_cast<std::size_t>(k) + 1] =
        row_[static_cast<std::size_t>(k)] + static_cast<std::size_t>(k / 2) + 1;
  }
  const std::size_t total = row_.back();
  coeff_.resize(total);
  gamma_at_a_.resize(total);
  a_param_.resize(total);
  for (int k = 0; k <= n_terms; ++k) {
    for (int l = 0; l <= k / 2; ++l) {
      const std::size_t idx = row_[static_cast<std::size_t>(k)] + static_cast<std::size_t>(l);
      const double log_c = std::lgamma(k + 1.0) - std::lgamma(l + 1.0) -
                           std::lgamma(k - 2.0 * l + 1.0) +
                           (1.5 * k - 3.0 * l - 1.0) * kLog2 - 0.5 * kLogPi;
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      coeff_[idx] = sign * std::exp(log_c);
      a_param_[idx] = 0.5 * (k - 2.0 * l + 1.0);
      gamma_at_a_[idx] = gamma_fn(a_param_[idx]);
    }
  }
}

double cdf_coefficient_table::cdf(std::span<const double> a_hat, double x,
                                  cdf_variant variant) const {
  if (!std::isfinite(x)) throw std::domain_error("cdf: non-finite argument");
  if (static_cast<int>(a_hat.size()) != n_ + 1) {
    throw std::invalid_argument("cdf: coefficient length does not match table order");
  }
  const double t = 0.5 * x * x;
  double total = 0.0;
  if (x >= 0.0) {
    switch (variant) {
      case cdf_variant::full_line: {
        for (int k = 0; k <= n_; ++k) {
          const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
          double inner = 0.0;
          for (std::size_t idx = row_[static_cast<std::size_t>(k)];
               idx < row_[static_cast<std::size_t>(k) + 1]; ++idx) {
            const double g = gamma_at_a_[idx];
            inner += coeff_[idx] * (sign_k * g + regularized_lower_gamma(a_param_[idx], t) * g);
          }
          total += a_hat[static_cast<std::size_t>(k)] * inner;
        }
        return total;
      }
      case cdf_variant::alternative: {
        for (int k = 0; k <= n_; ++k) {
          double inner = 0.0;
          for (std::size_t idx = row_[static_cast<std::size_t>(k)];
               idx < row_[static_cast<std::size_t>(k) + 1]; ++idx) {
            inner += coeff_[idx] * regularized_upper_gamma(a_param_[idx], t) * gamma_at_a_[idx];
          }
          total += a_hat[static_cast<std::size_t>(k)] * inner;
        }
        return 1.0 - total;
      }
      case cdf_variant::positive_support: {
        for (int k = 0; k <= n_; ++k) {
          double inner = 0.0;
          for (std::size_t idx = row_[static_cast<std::size_t>(k)];
               idx < row_[static_cast<std::size_t>(k) + 1]; ++idx) {
            inner += coeff_[idx] * regularized_lower_gamma(a_param_[idx], t) * gamma_at_a_[idx];
          }
          total += a_hat[static_cast<std::size_t>(k)] * inner;
        }
        return total;
      }
    }
    throw std::logic_error("unreachable cdf_variant");
  }
  if (variant == cdf_variant::positive_support) {
    throw std::domain_error("positive_support cdf requires x >= 0");
  }
  // full_line and alternative share the x < 0 branch.
  for (int k = 0; k <= n_; ++k) {
    const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
    double inner = 0.0;
    for (std::size_t idx = row_[static_cast<std::size_t>(k)];
         idx < row_[static_cast<std::size_t>(k) + 1]; ++idx) {
      inner += coeff_[idx] * regularized_upper_gamma(a_param_[idx], t) * gamma_at_a_[idx];
    }
    total += a_hat[static_cast<std::size_t>(k)] * sign_k * inner;
  }
  return total;
}

double gauss_hermite_pdf(std::span<const double> a_hat, double x) {
  if (a_hat.empty()) throw std::invalid_argument("gauss_hermite_pdf: empty coefficients");
  const double z = normal_pdf(x);
  if (z == 0.0) return 0.0;  // Gaussian factor underflowed; polynomials stay finite
  double acc = a_hat[0];
  if (a_hat.size() > 1) {
    double hkm1 = 1.0;
    double hk = 2.0 * x;
    acc += a_hat[1] * hk;
    for (std::size_t k = 1; k + 1 < a_hat.size(); ++k) {
      const double next = 2.0 * x * hk - 2.0 * static_cast<double>(k) * hkm1;
      hkm1 = hk;
      hk = next;
      acc += a_hat[k + 1] * hk;
    }
  }
  return z * acc;
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace hermiteq
