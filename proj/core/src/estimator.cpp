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

#include "hermiteq/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace hermiteq {

namespace {

constexpr double kSigmaFloor = 1e-12;

estimator_config validated(estimator_config config) {
  config.validate();
  return config;
}

}  // namespace

streaming_estimator::streaming_estimator(estimator_config config)
    : config_(validated(std::move(config))),
      coefficients_(config_.mode == update_mode::ewgh
                        ? coefficient_vector::make_ewgh(config_.n_terms, config_.lambda)
                        : coefficient_vector::make_static(config_.n_terms)),
      ewma_(config_.mode == update_mode::ewgh ? config_.lambda : 0.05),
      table_(std::make_shared<const cdf_coefficient_table>(config_.n_terms)) {}

scale_state streaming_estimator::current_scale() const {
  scale_state sc;
  sc.count = count();
  if (!config_.standardize || sc.count == 0) return sc;
  if (config_.mode == update_mode::ewgh) {
    sc.mu = ewma_.mean();
    sc.sigma = std::max(ewma_.std_dev(), kSigmaFloor);
  } else {
    sc.mu = welford_.mean();
    sc.sigma = welford_.std_ready() ? std::max(welford_.sample_std(), kSigmaFloor) : 1.0;
  }
  return sc;
}

void streaming_estimator::observe(double x) {
  if (!std::isfinite(x)) throw std::domain_error("observe: non-finite observation");
  if (config_.standardize) {
    // Moments first, then standardize with the just-updated values.
    if (config_.mode == update_mode::ewgh) {
      ewma_.update(x);
    } else {
      welford_.update(x);
    }
    const scale_state sc = current_scale();
    coefficients_.update(standardize(x, sc.mu, sc.sigma));
  } else {
    coefficients_.update(x);
  }
}

distribution_snapshot streaming_estimator::snapshot() const {
  if (count() == 0) throw std::logic_error("snapshot: estimator has absorbed no observations");
  return distribution_snapshot(coefficients_, current_scale(), config_, table_);
}

quantile_result streaming_estimator::quantile(double p) {
  const auto snap = snapshot();
  std::optional<double> warm;
  if (const auto it = warm_starts_.find(p); it != warm_starts_.end()) warm = it->second;
  const quantile_result result = invert_cdf(snap, p, config_.root_finder, warm);
  if (result.converged && result.value.has_value()) {
    warm_starts_[p] = snap.to_standardized(*result.value);
  }
  return result;
}

double streaming_estimator::cdf_at(double x) const { return snapshot().cdf_at(x); }

double streaming_estimator::pdf_at(double x) const { return snapshot().pdf_at(x); }

int effective_window(double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0)) {
    throw std::domain_error("effective_window: lambda must lie in (0, 1)");
  }
  return static_cast<int>(std::llround(std::log(0.001) / std::log1p(-lambda)));
}

}  // namespace hermiteq
