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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hermiteq/config.hpp"
#include "hermiteq/snapshot.hpp"
#include "hermiteq/stream_model.hpp"

namespace hermiteq {

/**
 * Order-statistic view of a finite sample: the step-function EDF and the
 * quantile rule q(p) = x_(ceil(n p)).
 */
class empirical_distribution {
 public:
  explicit empirical_distribution(std::vector<double> values);

  double edf(double x) const;
  /// p in (0, 1]; p = 1 returns the maximum.
  double quantile(double p) const;
  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted_values() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

/**
 * Adaptive Gauss-Kronrod quadrature (boost.math G7-K15). Endpoints may be
 * infinite. Throws std::runtime_error when the error estimate cannot reach
 * abs_tol.
 */
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-8);

/// Integrated squared error between the snapshot's density (original units)
/// and true_pdf over [lo, hi].
double ise(const distribution_snapshot& snapshot, const std::function<double(double)>& true_pdf,
           double lo, double hi, double abs_tol = 1e-8);

/// Exact expansion coefficient a_k = alpha_k int Z(x) f(x) H_k(x) dx by
/// quadrature.
double true_coefficient(const dist_spec& dist, int k, double abs_tol = 1e-10);

/// Variance of a single per-observation term alpha_k Z(X) H_k(X), X ~ dist.
double term_variance(const dist_spec& dist, int k, double abs_tol = 1e-10);

/**
 * Outcome of a Monte Carlo bound or identity check. grid/lhs/rhs/stderrs are
 * parallel arrays (one entry per probe point); pass is the conjunction over
 * the grid under the three-standard-error rule.
 */
struct bound_report {
  std::string check;
  std::vector<double> grid;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> stderrs;
  bool pass = false;
  std::string note;

  std::string to_json() const;
};

/**
 * Monte Carlo check of the pointwise CDF MSE bound for positive-support
 * distributions: E|F_N(x) - F(x)|^2 <= x * MISE(f_N) at each grid x. The
 * estimator is run with standardization off and the positive_support CDF,
 * which is the regime the bound speaks about. Passes a grid point when
 * mean(x*ISE_r - sq_err_r) >= -3 se over the runs.
 */
bound_report check_cdf_mse_bound(const stream_model& model, const estimator_config& config,
                                 std::span<const double> x_grid, int n_obs, int runs,
                                 std::uint64_t seed, int threads = 0);

/// Monte Carlo check of the density-weighted integrated CDF error bound
/// omega-bar^2 <= MISE(f_N) * mu, same configuration conventions as above.
bound_report check_omega_bound(const stream_model& model, const estimator_config& config,
                               int n_obs, int runs, std::uint64_t seed, int threads = 0);

/**
 * Monte Carlo check of the exponentially weighted coefficient MSE after a
 * change point: model must be a change_point stream (s+1 observations from
 * segment1, then t from segment2). Compares the Monte Carlo
 * E(a_hat_k - a_k^(2))^2 against the exact squared-bias-plus-variance
 * expression with quadrature-oracle coefficients and term variances;
 * equality within 3 standard errors.
 */
bound_report check_ewgh_coefficient_mse(const stream_model& model, std::uint64_t t, double lambda,
                                        int k, int runs, std::uint64_t seed, int threads = 0);

}  // namespace hermiteq
