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

#include "hermiteq/coefficients.hpp"

#include <cmath>
#include <stdexcept>

#include "hermiteq/special_functions.hpp"
#include "json.hpp"

namespace hermiteq {

namespace {

constexpr double kLogPi = 1.1447298858494001741434273513530587116;
constexpr double kLog2 = 0.6931471805599453094172321214581765681;

void check_order(int n_terms) {
  if (n_terms < 0) throw std::domain_error("coefficient order must be non-negative");
  if (n_terms > 64) throw std::domain_error("coefficient order beyond 64 is unsupported");
}

std::vector<double> alpha_table(int n_terms) {
  std::vector<double> alpha(static_cast<std::size_t>(n_terms) + 1);
  for (int k = 0; k <= n_terms; ++k) alpha[static_cast<std::size_t>(k)] = alpha_coefficient(k);
  return alpha;
}

// Visit alpha_k Z(x) H_k(x) for k = 0..n via the Hermite recurrence.
template <typename Fn>
void for_each_term(double x, int n, const std::vector<double>& alpha, Fn&& fn) {
  const double z = normal_pdf(x);
  double hkm1 = 1.0;
  fn(0, alpha[0] * z);
  if (n == 0) return;
  double hk = 2.0 * x;
  fn(1, alpha[1] * z * hk);
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * hk - 2.0 * static_cast<double>(k) * hkm1;
    hkm1 = hk;
    hk = next;
    fn(k + 1, alpha[static_cast<std::size_t>(k) + 1] * z * hk);
  }
}

}  // namespace

std::string to_string(update_mode mode) {
  return mode == update_mode::static_mean ? "static" : "ewgh";
}

update_mode update_mode_from_string(const std::string& s) {
  if (s == "static") return update_mode::static_mean;
  if (s == "ewgh") return update_mode::ewgh;
  throw std::invalid_argument("unknown update mode: " + s);
}

double alpha_coefficient(int k) {
  if (k < 0) throw std::domain_error("alpha_coefficient: order must be non-negative");
  return std::exp(0.5 * kLogPi - static_cast<double>(k - 1) * kLog2 -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

std::vector<double> coefficient_terms(double x, int n_terms) {
  check_order(n_terms);
  if (!std::isfinite(x)) throw std::domain_error("coefficient_terms: non-finite observation");
  std::vector<double> terms(static_cast<std::size_t>(n_terms) + 1);
  for_each_term(x, n_terms, alpha_table(n_terms),
                [&](int k, double t) { terms[static_cast<std::size_t>(k)] = t; });
  return terms;
}

coefficient_vector::coefficient_vector(int n_terms, update_mode mode, double lambda)
    : a_hat_(static_cast<std::size_t>(n_terms) + 1, 0.0),
      alpha_(alpha_table(n_terms)),
      mode_(mode),
      lambda_(lambda) {}

coefficient_vector coefficient_vector::make_static(int n_terms) {
  check_order(n_terms);
  return coefficient_vector(n_terms, update_mode::static_mean, 1.0);
}

coefficient_vector coefficient_vector::make_ewgh(int n_terms, double lambda) {
  check_order(n_terms);
  if (!(lambda > 0.0) || !(lambda <= 1.0)) {
    throw std::domain_error("ewgh lambda must lie in (0, 1]");
  }
  return coefficient_vector(n_terms, update_mode::ewgh, lambda);
}

void coefficient_vector::update(double x) {
  if (!std::isfinite(x)) throw std::domain_error("coefficient update: non-finite observation");
  if (count_ == 0) {
    // First observation seeds the state with its bare term.
    for_each_term(x, order(), alpha_,
                  [&](int k, double t) { a_hat_[static_cast<std::size_t>(k)] = t; });
    count_ = 1;
    return;
  }
  if (mode_ == update_mode::static_mean) {
    const double prev = static_cast<double>(count_);
    const double inv = 1.0 / static_cast<double>(count_ + 1);
    for_each_term(x, order(), alpha_, [&](int k, double t) {
      double& a = a_hat_[static_cast<std::size_t>(k)];
      a = (prev * a + t) * inv;
    });
  } else {
    const double keep = 1.0 - lambda_;
    for_each_term(x, order(), alpha_, [&](int k, double t) {
      double& a = a_hat_[static_cast<std::size_t>(k)];
      a = lambda_ * t + keep * a;
    });
  }
  ++count_;
}

std::string coefficient_vector::to_json() const {
  nlohmann::json j;
  j["mode"] = to_string(mode_);
  if (mode_ == update_mode::ewgh) {
    j["lambda"] = lambda_;
  } else {
    j["lambda"] = nullptr;
  }
  j["count"] = count_;
  j["a_hat"] = a_hat_;
  return j.dump();
}

coefficient_vector coefficient_vector::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto mode = update_mode_from_string(j.at("mode").get<std::string>());
  const auto a_hat = j.at("a_hat").get<std::vector<double>>();
  if (a_hat.empty()) throw std::invalid_argument("coefficient_vector: empty a_hat");
  coefficient_vector cv =
      mode == update_mode::ewgh
          ? make_ewgh(static_cast<int>(a_hat.size()) - 1, j.at("lambda").get<double>())
          : make_static(static_cast<int>(a_hat.size()) - 1);
  cv.a_hat_ = a_hat;
  cv.count_ = j.at("count").get<std::uint64_t>();
  return cv;
}

coefficient_vector fit_batch(std::span<const double> data, int n_terms) {
  check_order(n_terms);
  if (data.empty()) throw std::invalid_argument("fit_batch: empty data");
  const std::size_t width = static_cast<std::size_t>(n_terms) + 1;
  const auto alpha = alpha_table(n_terms);
  std::vector<double> sum(width, 0.0);
  std::vector<double> comp(width, 0.0);  // Neumaier compensation
  for (double x : data) {
    if (!std::isfinite(x)) throw std::domain_error("fit_batch: non-finite observation");
    for_each_term(x, n_terms, alpha, [&](int k, double t) {
      double& s = sum[static_cast<std::size_t>(k)];
      const double next = s + t;
      if (std::abs(s) >= std::abs(t)) {
        comp[static_cast<std::size_t>(k)] += (s - next) + t;
      } else {
        comp[static_cast<std::size_t>(k)] += (t - next) + s;
      }
      s = next;
    });
  }
  coefficient_vector cv = coefficient_vector::make_static(n_terms);
  const double inv_n = 1.0 / static_cast<double>(data.size());
  for (std::size_t k = 0; k < width; ++k) {
    cv.a_hat_[k] = (sum[k] + comp[k]) * inv_n;
  }
  cv.count_ = data.size();
  return cv;
}

}  // namespace hermiteq
