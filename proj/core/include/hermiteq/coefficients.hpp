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
#include <span>
#include <string>
#include <vector>

namespace hermiteq {

/// How the expansion coefficients absorb new observations.
enum class update_mode { static_mean, ewgh };

std::string to_string(update_mode mode);
update_mode update_mode_from_string(const std::string& s);

/// alpha_k = sqrt(pi) / (2^{k-1} k!), computed on the log scale so large k
/// does not overflow the factorial.
double alpha_coefficient(int k);

/**
 * Per-observation contribution alpha_k Z(x) H_k(x) for k = 0..n_terms.
 * Entry 0 equals sqrt(2) e^{-x^2/2}; all entries decay like a Gaussian in x.
 */
std::vector<double> coefficient_terms(double x, int n_terms);

/**
 * The estimated expansion coefficients a_hat_0..a_hat_N together with the
 * update rule that maintains them.
 *
 * static_mean keeps the running average of per-observation terms, so after n
 * observations the state equals the batch mean of the n terms. ewgh keeps an
 * exponentially weighted moving average with weight lambda on the newest
 * term; the first observation seeds the state with its bare term (no lambda
 * weight). The mode is fixed at construction.
 */
class coefficient_vector {
 public:
  static coefficient_vector make_static(int n_terms);
  static coefficient_vector make_ewgh(int n_terms, double lambda);

  /// Absorb one observation. Non-finite x is rejected with std::domain_error
  /// and the state is left untouched; silent skips would corrupt the
  /// count-based weights.
  void update(double x);

  int order() const { return static_cast<int>(a_hat_.size()) - 1; }
  update_mode mode() const { return mode_; }
  /// Meaningful only in ewgh mode.
  double lambda() const { return lambda_; }
  std::uint64_t count() const { return count_; }
  const std::vector<double>& values() const { return a_hat_; }

  /// JSON document {"mode","lambda","count","a_hat"}; numbers round-trip
  /// bit-exactly through from_json.
  std::string to_json() const;
  static coefficient_vector from_json(const std::string& text);

  bool operator==(const coefficient_vector&) const = default;

  friend coefficient_vector fit_batch(std::span<const double> data, int n_terms);

 private:
  coefficient_vector(int n_terms, update_mode mode, double lambda);

  std::vector<double> a_hat_;
  std::vector<double> alpha_;  // precomputed alpha_k
  std::uint64_t count_ = 0;
  update_mode mode_;
  double lambda_;
};

/**
 * Batch fit over a whole dataset: the mean of per-observation terms,
 * accumulated with compensated summation. Serves as the non-sequential
 * reference for the streaming static update. Throws on empty data.
 */
coefficient_vector fit_batch(std::span<const double> data, int n_terms);

}  // namespace hermiteq
