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
#include <stdexcept>

namespace hermiteq {

void running_moments::update(double x) {
  if (!std::isfinite(x)) throw std::domain_error("running_moments: non-finite observation");
  if (count == 0) {
    count = 1;
    m = x;
    s = 0.0;
    return;
  }
  ++count;
  const double prev_m = m;
  m = prev_m + (x - prev_m) / static_cast<double>(count);
  s += (x - prev_m) * (x - m);
}

double running_moments::mean() const {
  if (count == 0) throw std::logic_error("running_moments: mean of empty state");
  return m;
}

double running_moments::sample_variance() const {
  if (!std_ready()) throw std::logic_error("running_moments: variance requires count >= 2");
  return s / static_cast<double>(count - 1);
}

double running_moments::sample_std() const { return std::sqrt(sample_variance()); }

exp_moments::exp_moments(double lambda_weight) : lambda(lambda_weight) {
  if (!(lambda > 0.0) || !(lambda <= 1.0)) {
    throw std::domain_error("exp_moments: lambda must lie in (0, 1]");
  }
}

void exp_moments::update(double x) {
  if (!std::isfinite(x)) throw std::domain_error("exp_moments: non-finite observation");
  if (count == 0) {
    count = 1;
    mu = x;
    v = 1.0;
    return;
  }
  ++count;
  mu = (1.0 - lambda) * mu + lambda * x;
  const double dev = x - mu;
  v = (1.0 - lambda) * v + lambda * dev * dev;
}

double exp_moments::std_dev() const { return std::sqrt(v); }

double standardize(double x, double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("standardize: sigma must be positive");
  return (x - mu) / sigma;
}

double destandardize(double z, double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("destandardize: sigma must be positive");
  return sigma * z + mu;
}

}  // namespace hermiteq
