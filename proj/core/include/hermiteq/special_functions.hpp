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

#include <vector>

namespace hermiteq {

/**
 * Physicists' Hermite polynomials H_0(x)..H_n(x), evaluated by the upward
 * three-term recurrence H_{k+1} = 2x H_k - 2k H_{k-1}.
 *
 * The returned vector has n+1 entries with values[0] == 1 and, for n >= 1,
 * values[1] == 2x. Throws std::domain_error for non-finite x.
 */
std::vector<double> hermite_all(double x, int n);

/// Single H_k(x) without the intermediate vector.
double hermite_value(double x, int k);

/// Standard normal density Z(x) = e^{-x^2/2} / sqrt(2 pi).
double normal_pdf(double x);

/**
 * Incomplete gamma functions for a > 0, x >= 0.
 *
 * The regularized forms P(a,x) = gamma(a,x)/Gamma(a) and
 * Q(a,x) = Gamma(a,x)/Gamma(a) are computed by the classic split: power
 * series for x < a+1, Lentz continued fraction otherwise, with convergence
 * tolerance 1e-15 and an iteration cap of 500. P + Q == 1 by construction,
 * so lower_gamma(a,x) + upper_gamma(a,x) recovers gamma_fn(a) to rounding.
 */
double regularized_lower_gamma(double a, double x);
double regularized_upper_gamma(double a, double x);
double lower_gamma(double a, double x);
double upper_gamma(double a, double x);

/**
 * Gamma function for a > 0. Half-integer arguments (the only ones the CDF
 * expansion needs) are built exactly from Gamma(1/2) = sqrt(pi) and
 * Gamma(1) = 1 via Gamma(a+1) = a Gamma(a); anything else falls through to
 * std::tgamma.
 */
double gamma_fn(double a);

}  // namespace hermiteq
