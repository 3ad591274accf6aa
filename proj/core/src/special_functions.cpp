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

#include "hermiteq/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hermiteq {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684;
constexpr double kSqrtPi = 1.7724538509055160272981674833411451828;
constexpr double kGammaTol = 1e-15;
constexpr int kGammaMaxIter = 500;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite argument");
}

// P(a,x) by the power series, valid and fast for x < a+1.
double lower_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < kGammaMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) <= std::abs(sum) * kGammaTol) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error("regularized_lower_gamma: series did not converge");
}

// Q(a,x) by the Lentz continued fraction, valid for x >= a+1.
double upper_continued_fraction(double a, double x) {
  const double fpmin = std::numeric_limits<double>::min() / kGammaTol;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kGammaMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kGammaTol) {
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
  }
  throw std::runtime_error("regularized_upper_gamma: continued fraction did not converge");
}

void check_gamma_domain(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("incomplete gamma: requires a > 0");
  if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error("incomplete gamma: requires x >= 0");
}

}  // namespace

std::vector<double> hermite_all(double x, int n) {
  require_finite(x, "hermite_all");
  if (n < 0) throw std::domain_error("hermite_all: order must be non-negative");
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  values[0] = 1.0;
  if (n >= 1) values[1] = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    values[static_cast<std::size_t>(k) + 1] =
        2.0 * x * values[static_cast<std::size_t>(k)] -
        2.0 * static_cast<double>(k) * values[static_cast<std::size_t>(k) - 1];
  }
  return values;
}

double hermite_value(double x, int k) {
  require_finite(x, "hermite_value");
  if (k < 0) throw std::domain_error("hermite_value: order must be non-negative");
  double hkm1 = 1.0;
  if (k == 0) return hkm1;
  double hk = 2.0 * x;
  for (int j = 1; j < k; ++j) {
    const double next = 2.0 * x * hk - 2.0 * static_cast<double>(j) * hkm1;
    hkm1 = hk;
    hk = next;
  }
  return hk;
}

double normal_pdf(double x) {
  require_finite(x, "normal_pdf");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double regularized_lower_gamma(double a, double x) {
  check_gamma_domain(a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return lower_series(a, x);
  return 1.0 - upper_continued_fraction(a, x);
}

double regularized_upper_gamma(double a, double x) {
  check_gamma_domain(a, x);
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - lower_series(a, x);
  return upper_continued_fraction(a, x);
}

double lower_gamma(double a, double x) { return regularized_lower_gamma(a, x) * gamma_fn(a); }

double upper_gamma(double a, double x) { return regularized_upper_gamma(a, x) * gamma_fn(a); }

double gamma_fn(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("gamma_fn: requires a > 0");
  const double twice = 2.0 * a;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) < 1e-12 && rounded < 360.0) {
    const long long doubled = static_cast<long long>(rounded);
    double value;
    double arg;
    if (doubled % 2 == 0) {
      value = 1.0;  // Gamma(1)
      arg = 1.0;
    } else {
      value = kSqrtPi;  // Gamma(1/2)
      arg = 0.5;
    }
    while (arg + 0.5 < a) {
      value *= arg;
      arg += 1.0;
    }
    return value;
  }
  return std::tgamma(a);
}

}  // namespace hermiteq
