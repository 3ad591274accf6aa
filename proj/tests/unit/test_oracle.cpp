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
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hermiteq/estimator.hpp"
#include "hermiteq/special_functions.hpp"
#include "json.hpp"

using namespace hermiteq;

namespace {

distribution_snapshot snapshot_with(const std::vector<double>& a_hat, estimator_config cfg) {
  nlohmann::json j;
  j["mode"] = "static";
  j["lambda"] = nullptr;
  j["count"] = 1000;
  j["a_hat"] = a_hat;
  scale_state sc;
  sc.count = 1000;
  return distribution_snapshot(coefficient_vector::from_json(j.dump()), sc, std::move(cfg),
                               nullptr);
}

}  // namespace

TEST_CASE("edf and sample quantile hand values") {
  const empirical_distribution d({1.0, 2.0, 3.0});
  CHECK(d.edf(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(d.edf(0.5) == 0.0);
  CHECK(d.edf(3.5) == 1.0);

  const empirical_distribution d4({1.0, 2.0, 3.0, 4.0});
  CHECK(d4.quantile(0.5) == 2.0);  // i = ceil(4 * 0.5) = 2
  CHECK(d4.quantile(1.0) == 4.0);
  CHECK(d4.quantile(0.2) == 1.0);

  CHECK_THROWS_AS(empirical_distribution(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(d4.quantile(0.0), std::domain_error);
}

TEST_CASE("sample quantile agrees with full-sort brute force") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::vector<double> values(5000);
  for (auto& v : values) v = u(rng);
  const empirical_distribution d(values);
  std::sort(values.begin(), values.end());
  std::uniform_real_distribution<double> up(1e-6, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double p = up(rng);
    const auto rank = static_cast<std::size_t>(
        std::ceil(static_cast<double>(values.size()) * p));
    CHECK(d.quantile(p) == values[std::clamp<std::size_t>(rank, 1, values.size()) - 1]);
  }
}

TEST_CASE("ise of the exact representation is zero") {
  estimator_config cfg;
  cfg.standardize = false;
  std::vector<double> a(7, 0.0);
  a[0] = 1.0;
  const auto snap = snapshot_with(a, cfg);
  const double err = ise(
      snap, [](double x) { return normal_pdf(x); }, -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity());
  CHECK(err >= 0.0);
  CHECK(err < 1e-12);
}

TEST_CASE("ise of the zero estimate equals the density's L2 norm") {
  estimator_config cfg;
  cfg.standardize = false;
  const auto snap = snapshot_with(std::vector<double>(7, 0.0), cfg);
  const double err = ise(
      snap, [](double x) { return normal_pdf(x); }, -std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity());
  // int Z^2 dx = 1 / (2 sqrt(pi))
  CHECK(err == doctest::Approx(0.2820947918).epsilon(1e-8));
}

TEST_CASE("true coefficients of the standard normal") {
  const auto normal = dist_spec::normal(0.0, 1.0);
  CHECK(true_coefficient(normal, 0) == doctest::Approx(1.0).epsilon(1e-9));
  for (int k = 1; k <= 6; ++k) {
    CHECK(std::abs(true_coefficient(normal, k)) < 1e-9);
  }
}

TEST_CASE("term variance oracle matches a big Monte Carlo sample") {
  const auto exp1 = dist_spec::exponential(1.0);
  const double by_quadrature = term_variance(exp1, 2);
  std::mt19937_64 rng(71);
  const int n = 400000;
  double mean = 0.0;
  std::vector<double> terms(n);
  for (int i = 0; i < n; ++i) {
    const double x = exp1.draw(rng);
    terms[i] = alpha_coefficient(2) * normal_pdf(x) * hermite_value(x, 2);
    mean += terms[i];
  }
  mean /= n;
  double var = 0.0;
  for (double t : terms) var += (t - mean) * (t - mean);
  var /= n - 1;
  CHECK(by_quadrature == doctest::Approx(var).epsilon(0.02));
}

TEST_CASE("cdf mse bound holds for the exponential at small scale") {
  const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 4.0};
  const auto report = check_cdf_mse_bound(stream_model::exponential_unit(), estimator_config{},
                                          grid, 200, 120, 9001);
  CHECK(report.pass);
  CHECK(report.lhs.size() == grid.size());
  // x = 0: both sides exactly zero.
  CHECK(report.lhs[0] == 0.0);
  CHECK(report.rhs[0] == 0.0);
  const auto parsed = nlohmann::json::parse(report.to_json());
  CHECK(parsed.at("check") == "cdf-mse-bound");
  CHECK(parsed.at("pass").get<bool>());
}

TEST_CASE("omega bound holds for the exponential at small scale") {
  const auto report =
      check_omega_bound(stream_model::exponential_unit(), estimator_config{}, 200, 120, 9002);
  CHECK(report.pass);
  CHECK(report.lhs.size() == 1);
  CHECK(report.lhs[0] >= 0.0);
}

TEST_CASE("bound checks flag insufficient runs") {
  const std::vector<double> grid{1.0};
  const auto report = check_cdf_mse_bound(stream_model::exponential_unit(), estimator_config{},
                                          grid, 50, 1, 1);
  CHECK_FALSE(report.pass);
  CHECK(report.note.find("insufficient") != std::string::npos);
}

TEST_CASE("ewgh coefficient mse matches the exact expression at small scale") {
  const auto model =
      stream_model::change_point(dist_spec::normal(0.0, 1.0), dist_spec::normal(5.0, 1.0), 50);
  const auto report = check_ewgh_coefficient_mse(model, 20, 0.05, 0, 1200, 9003);
  CHECK(report.pass);
  CHECK(report.lhs[0] == doctest::Approx(report.rhs[0]).epsilon(0.2));
}

TEST_CASE("ewgh coefficient mse with lambda=1 is memoryless") {
  // lambda = 1: the estimate is the newest term, so the MSE equals the
  // single-term variance around a_k of the second segment.
  const auto model =
      stream_model::change_point(dist_spec::normal(0.0, 1.0), dist_spec::normal(2.0, 1.0), 30);
  const auto report = check_ewgh_coefficient_mse(model, 10, 1.0, 0, 1500, 9004);
  CHECK(report.pass);
  CHECK(report.rhs[0] == doctest::Approx(term_variance(model.segment2, 0)).epsilon(1e-9));
}

TEST_CASE("ewgh coefficient mse reduces to the iid identity when segments match") {
  const auto f = dist_spec::normal(0.0, 1.0);
  const auto model = stream_model::change_point(f, f, 0);
  // s = 0: one observation from f1 = f2 then t more; identical to an i.i.d.
  // stream of t+1 observations.
  const double lambda = 0.1;
  const std::uint64_t t = 40;
  const auto report = check_ewgh_coefficient_mse(model, t, lambda, 0, 1500, 9005);
  CHECK(report.pass);
  const double factor = lambda / (2.0 - lambda) *
                            (1.0 - std::pow(1.0 - lambda, 2.0 * static_cast<double>(t))) +
                        std::pow(1.0 - lambda, 2.0 * static_cast<double>(t));
  CHECK(report.rhs[0] == doctest::Approx(factor * term_variance(f, 0)).epsilon(1e-9));
}

TEST_CASE("ewgh coefficient mse decays in t on the exact side") {
  const auto model =
      stream_model::change_point(dist_spec::normal(0.0, 1.0), dist_spec::normal(5.0, 1.0), 500);
  double prev = std::numeric_limits<double>::infinity();
  for (std::uint64_t t : {10ULL, 100ULL, 500ULL}) {
    const auto report = check_ewgh_coefficient_mse(model, t, 0.05, 0, 2, 9006);
    CHECK(report.rhs[0] < prev);
    prev = report.rhs[0];
  }
}

TEST_CASE("quadrature wrapper converges and reports failure") {
  const double one = integrate([](double x) { return normal_pdf(x); },
                               -std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::infinity(), 1e-10);
  CHECK(one == doctest::Approx(1.0).epsilon(1e-10));
}
