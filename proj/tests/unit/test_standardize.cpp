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

#include "hermiteq/standardize.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace hermiteq;

namespace {

// Two-pass batch moments in extended precision as the reference.
std::pair<double, double> batch_mean_var(const std::vector<double>& xs) {
  long double mean = 0.0L;
  for (double x : xs) mean += x;
  mean /= static_cast<long double>(xs.size());
  long double ss = 0.0L;
  for (double x : xs) {
    const long double d = x - mean;
    ss += d * d;
  }
  return {static_cast<double>(mean),
          static_cast<double>(ss / static_cast<long double>(xs.size() - 1))};
}

}  // namespace

TEST_CASE("welford hand values") {
  running_moments rm;
  for (double x : {1.0, 2.0, 3.0}) rm.update(x);
  CHECK(rm.mean() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rm.sample_std() == doctest::Approx(1.0).epsilon(1e-15));

  running_moments rm2;
  for (double x : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0}) rm2.update(x);
  CHECK(rm2.mean() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(rm2.sample_variance() == doctest::Approx(4.5714285714).epsilon(1e-10));
}

TEST_CASE("welford std undefined until the second observation") {
  running_moments rm;
  rm.update(3.0);
  CHECK_FALSE(rm.std_ready());
  CHECK_THROWS_AS(rm.sample_std(), std::logic_error);
  rm.update(4.0);
  CHECK(rm.std_ready());
}

TEST_CASE("welford resists cancellation on offset-heavy data") {
  // Values near 1e9 with unit variance: the naive sum-of-squares formula
  // loses the entire variance signal (x^2 ~ 1e18 quantizes at ~128), while
  // Welford stays within f64's intrinsic accuracy of the extended-precision
  // two-pass reference (~1e-7 at this conditioning).
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(1e9, 1.0);
  std::vector<double> xs(10000);
  running_moments rm;
  double naive_sum = 0.0;
  double naive_sum_sq = 0.0;
  for (auto& x : xs) {
    x = normal(rng);
    rm.update(x);
    naive_sum += x;
    naive_sum_sq += x * x;
  }
  const auto [mean, var] = batch_mean_var(xs);
  CHECK(rm.mean() == doctest::Approx(mean).epsilon(1e-10));
  CHECK(rm.sample_variance() == doctest::Approx(var).epsilon(1e-6));

  const double n = static_cast<double>(xs.size());
  const double naive_var = (naive_sum_sq - naive_sum * naive_sum / n) / (n - 1.0);
  const double welford_err = std::abs(rm.sample_variance() - var);
  const double naive_err = std::abs(naive_var - var);
  CHECK(naive_err > 1000.0 * std::max(welford_err, 1e-12));
}

TEST_CASE("welford matches two-pass moments on wide-range data") {
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::vector<double> xs(10000);
  running_moments rm;
  for (auto& x : xs) {
    x = u(rng);
    rm.update(x);
  }
  const auto [mean, var] = batch_mean_var(xs);
  CHECK(rm.mean() == doctest::Approx(mean).epsilon(1e-10));
  CHECK(rm.sample_variance() == doctest::Approx(var).epsilon(1e-10));
}

TEST_CASE("ewma hand evaluation") {
  exp_moments em(0.5);
  em.update(0.0);
  CHECK(em.mu == 0.0);
  CHECK(em.v == 1.0);
  em.update(2.0);
  CHECK(em.mu == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(em.v == doctest::Approx(1.0).epsilon(1e-15));  // 0.5*1 + 0.5*(2-1)^2
}

TEST_CASE("ewma with lambda=1 pins to the newest observation") {
  exp_moments em(1.0);
  em.update(5.0);
  em.update(-1.5);
  CHECK(em.mu == -1.5);
  CHECK(em.v == 0.0);
  em.update(7.0);
  CHECK(em.mu == 7.0);
  CHECK(em.v == 0.0);
}

TEST_CASE("ewma on a constant stream decays v geometrically") {
  const double lambda = 0.2;
  exp_moments em(lambda);
  const double c = 3.25;
  em.update(c);
  for (int k = 2; k <= 30; ++k) {
    em.update(c);
    CHECK(em.mu == doctest::Approx(c).epsilon(1e-14));
    CHECK(em.v == doctest::Approx(std::pow(1.0 - lambda, k - 1)).epsilon(1e-12));
  }
}

TEST_CASE("ewma variance never goes negative") {
  for (double lambda : {0.01, 0.05, 0.1, 0.2, 1.0}) {
    std::mt19937_64 rng(777);
    std::student_t_distribution<double> heavy(3.0);
    exp_moments em(lambda);
    for (int i = 0; i < 1000000; ++i) {
      em.update(heavy(rng));
      if (em.v < 0.0) {
        FAIL("negative EWMA variance at lambda=" << lambda);
      }
    }
    CHECK(em.v >= 0.0);
  }
}

TEST_CASE("moment updates reject non-finite observations") {
  running_moments rm;
  rm.update(1.0);
  CHECK_THROWS_AS(rm.update(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK(rm.count == 1);
  exp_moments em(0.1);
  em.update(1.0);
  CHECK_THROWS_AS(em.update(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK(em.count == 1);
}

TEST_CASE("standardize and destandardize are inverse") {
  CHECK(standardize(5.0, 5.0, 2.0) == 0.0);
  CHECK(standardize(7.0, 5.0, 2.0) == 1.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::uniform_real_distribution<double> us(0.01, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    const double mu = u(rng);
    const double sigma = us(rng);
    const double back = destandardize(standardize(x, mu, sigma), mu, sigma);
    CHECK(back == doctest::Approx(x).epsilon(1e-14));
  }
  CHECK_THROWS_AS(standardize(1.0, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(destandardize(1.0, 0.0, -1.0), std::domain_error);
}
