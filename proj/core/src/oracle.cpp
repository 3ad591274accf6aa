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

#include "hermiteq/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hermiteq/coefficients.hpp"
#include "hermiteq/detail/parallel.hpp"
#include "hermiteq/estimator.hpp"
#include "hermiteq/special_functions.hpp"
#include "json.hpp"

namespace hermiteq {

namespace {

struct mean_se {
  double mean = 0.0;
  double se = 0.0;
};

mean_se summarize(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

estimator_config positive_support_config(estimator_config config) {
  // The bounds speak about the raw positive-support estimator on raw data.
  config.standardize = false;
  config.variant = cdf_variant::positive_support;
  config.validate();
  return config;
}

dist_spec fixed_distribution(const stream_model& model) {
  switch (model.k) {
    case stream_model::kind::chi_squared_5:
    case stream_model::kind::exponential_unit:
    case stream_model::kind::pareto:
      return model.distribution_at(1);
    default:
      throw std::invalid_argument("bound check requires an i.i.d. stream model");
  }
}

// MISE integrand split at the support edge, where the true pdf may jump.
double snapshot_ise_full_line(const distribution_snapshot& snap, const dist_spec& dist) {
  const double lo = dist.support_low();
  const auto sq_err = [&](double x) {
    const double d = snap.pdf_at(x) - dist.pdf(x);
    return d * d;
  };
  double total = 0.0;
  if (std::isfinite(lo)) {
    const auto left = [&](double x) {
      const double d = snap.pdf_at(x);
      return d * d;
    };
    total += integrate(left, -std::numeric_limits<double>::infinity(), lo, 1e-8);
    total += integrate(sq_err, lo, std::numeric_limits<double>::infinity(), 1e-8);
  } else {
    total += integrate(sq_err, -std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity(), 1e-8);
  }
  return total;
}

}  // namespace

empirical_distribution::empirical_distribution(std::vector<double> values)
    : sorted_(std::move(values)) {
  if (sorted_.empty()) throw std::invalid_argument("empirical_distribution: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double empirical_distribution::edf(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double empirical_distribution::quantile(double p) const {
  if (!(p > 0.0) || !(p <= 1.0)) {
    throw std::domain_error("sample quantile: p must lie in (0, 1]");
  }
  const double n = static_cast<double>(sorted_.size());
  auto i = static_cast<std::size_t>(std::ceil(n * p));
  i = std::clamp<std::size_t>(i, 1, sorted_.size());
  return sorted_[i - 1];
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol) {
  using quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  double error = 0.0;
  const double value = quadrature::integrate(f, lo, hi, 15, 1e-10, &error);
  if (!(error <= std::max(abs_tol, 1e-9 * std::abs(value)))) {
    throw std::runtime_error("quadrature did not converge to the requested tolerance");
  }
  return value;
}

double ise(const distribution_snapshot& snapshot, const std::function<double(double)>& true_pdf,
           double lo, double hi, double abs_tol) {
  const auto sq_err = [&](double x) {
    const double d = snapshot.pdf_at(x) - true_pdf(x);
    return d * d;
  };
  return integrate(sq_err, lo, hi, abs_tol);
}

double true_coefficient(const dist_spec& dist, int k, double abs_tol) {
  const auto integrand = [&](double x) {
    return normal_pdf(x) * dist.pdf(x) * hermite_value(x, k);
  };
  const double raw = integrate(integrand, dist.support_low(),
                               std::numeric_limits<double>::infinity(), abs_tol);
  return alpha_coefficient(k) * raw;
}

double term_variance(const dist_spec& dist, int k, double abs_tol) {
  const double alpha = alpha_coefficient(k);
  const auto integrand = [&](double x) {
    const double z = normal_pdf(x);
    const double h = hermite_value(x, k);
    return z * z * h * h * dist.pdf(x);
  };
  const double second = alpha * alpha *
                        integrate(integrand, dist.support_low(),
                                  std::numeric_limits<double>::infinity(), abs_tol);
  const double a_k = true_coefficient(dist, k, abs_tol);
  return second - a_k * a_k;
}

std::string bound_report::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["grid"] = grid;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["stderr"] = stderrs;
  j["pass"] = pass;
  j["note"] = note;
  return j.dump();
}

bound_report check_cdf_mse_bound(const stream_model& model, const estimator_config& config,
                                 std::span<const double> x_grid, int n_obs, int runs,
                                 std::uint64_t seed, int threads) {
  bound_report report;
  report.check = "cdf-mse-bound";
  report.grid.assign(x_grid.begin(), x_grid.end());
  if (runs < 2) {
    report.note = "insufficient runs: need at least 2 for a standard error";
    return report;
  }
  const dist_spec dist = fixed_distribution(model);
  if (dist.support_low() < 0.0) {
    throw std::invalid_argument("cdf-mse-bound requires a positive-support model");
  }
  const estimator_config cfg = positive_support_config(config);

  std::vector<std::vector<double>> sq(x_grid.size(), std::vector<double>(runs, 0.0));
  std::vector<double> run_ise(runs, 0.0);
  detail::parallel_for_runs(runs, threads, [&](int r) {
    std::mt19937_64 rng(seed + 1 + static_cast<std::uint64_t>(r));
    streaming_estimator est(cfg);
    for (int j = 1; j <= n_obs; ++j) est.observe(model.draw(rng, static_cast<std::uint64_t>(j)));
    const auto snap = est.snapshot();
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
      const double e = snap.cdf_raw_at(x_grid[i]) - dist.cdf(x_grid[i]);
      sq[i][static_cast<std::size_t>(r)] = e * e;
    }
    run_ise[static_cast<std::size_t>(r)] = snapshot_ise_full_line(snap, dist);
  });

  const double mise = summarize(run_ise).mean;
  report.pass = true;
  std::vector<double> diffs(runs);
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    for (int r = 0; r < runs; ++r) {
      diffs[static_cast<std::size_t>(r)] =
          x_grid[i] * run_ise[static_cast<std::size_t>(r)] - sq[i][static_cast<std::size_t>(r)];
    }
    const auto d = summarize(diffs);
    report.lhs.push_back(summarize(sq[i]).mean);
    report.rhs.push_back(x_grid[i] * mise);
    report.stderrs.push_back(d.se);
    if (!(d.mean >= -3.0 * d.se)) report.pass = false;
  }
  return report;
}

bound_report check_omega_bound(const stream_model& model, const estimator_config& config,
                               int n_obs, int runs, std::uint64_t seed, int threads) {
  bound_report report;
  report.check = "omega-bound";
  if (runs < 2) {
    report.note = "insufficient runs: need at least 2 for a standard error";
    return report;
  }
  const dist_spec dist = fixed_distribution(model);
  if (dist.support_low() < 0.0) {
    throw std::invalid_argument("omega-bound requires a positive-support model");
  }
  const estimator_config cfg = positive_support_config(config);
  const double mu = dist.mean();

  std::vector<double> omegas(runs, 0.0);
  std::vector<double> run_ise(runs, 0.0);
  detail::parallel_for_runs(runs, threads, [&](int r) {
    std::mt19937_64 rng(seed + 1 + static_cast<std::uint64_t>(r));
    streaming_estimator est(cfg);
    for (int j = 1; j <= n_obs; ++j) est.observe(model.draw(rng, static_cast<std::uint64_t>(j)));
    const auto snap = est.snapshot();
    const auto weighted = [&](double x) {
      const double e = snap.cdf_raw_at(std::max(x, 0.0)) - dist.cdf(x);
      return e * e * dist.pdf(x);
    };
    omegas[static_cast<std::size_t>(r)] =
        integrate(weighted, dist.support_low(), std::numeric_limits<double>::infinity(), 1e-8);
    run_ise[static_cast<std::size_t>(r)] = snapshot_ise_full_line(snap, dist);
  });

  std::vector<double> diffs(runs);
  for (int r = 0; r < runs; ++r) {
    diffs[static_cast<std::size_t>(r)] =
        mu * run_ise[static_cast<std::size_t>(r)] - omegas[static_cast<std::size_t>(r)];
  }
  const auto d = summarize(diffs);
  report.lhs.push_back(summarize(omegas).mean);
  report.rhs.push_back(mu * summarize(run_ise).mean);
  report.stderrs.push_back(d.se);
  report.pass = d.mean >= -3.0 * d.se;
  return report;
}

bound_report check_ewgh_coefficient_mse(const stream_model& model, std::uint64_t t, double lambda,
                                        int k, int runs, std::uint64_t seed, int threads) {
  bound_report report;
  report.check = "ewgh-coeff-mse";
  report.grid.push_back(static_cast<double>(t));
  if (model.k != stream_model::kind::change_point) {
    throw std::invalid_argument("ewgh-coeff-mse requires a change-point model");
  }
  if (runs < 2) {
    report.note = "insufficient runs: need at least 2 for a standard error";
    return report;
  }
  const std::uint64_t s = model.change_s;
  const double a1 = true_coefficient(model.segment1, k);
  const double a2 = true_coefficient(model.segment2, k);
  const double s1 = term_variance(model.segment1, k);
  const double s2 = term_variance(model.segment2, k);
  const double q = 1.0 - lambda;
  const double ratio = lambda / (2.0 - lambda);
  const double q2t = std::pow(q, 2.0 * static_cast<double>(t));
  const double q2st = std::pow(q, 2.0 * static_cast<double>(s + t));
  const double exact = q2t * (a1 - a2) * (a1 - a2) +
                       s1 * (ratio * q2t + (1.0 - ratio) * q2st) + s2 * ratio * (1.0 - q2t);

  std::vector<double> sq_errors(runs, 0.0);
  detail::parallel_for_runs(runs, threads, [&](int r) {
    std::mt19937_64 rng(seed + 1 + static_cast<std::uint64_t>(r));
    coefficient_vector cv = coefficient_vector::make_ewgh(k, lambda);
    const std::uint64_t total = s + 1 + t;
    for (std::uint64_t j = 1; j <= total; ++j) cv.update(model.draw(rng, j));
    const double e = cv.values().back() - a2;
    sq_errors[static_cast<std::size_t>(r)] = e * e;
  });

  const auto mc = summarize(sq_errors);
  report.lhs.push_back(mc.mean);
  report.rhs.push_back(exact);
  report.stderrs.push_back(mc.se);
  report.pass = std::abs(mc.mean - exact) <= 3.0 * mc.se;
  return report;
}

}  // namespace hermiteq
