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

#include "hermiteq/stream_model.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hermiteq {

dist_spec dist_spec::normal(double mean, double sd) {
  if (!(sd > 0.0)) throw std::invalid_argument("normal: sd must be positive");
  return {family::normal, mean, sd};
}

dist_spec dist_spec::exponential(double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("exponential: mean must be positive");
  return {family::exponential, mean, 0.0};
}

dist_spec dist_spec::chi_squared(double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("chi_squared: dof must be positive");
  return {family::chi_squared, dof, 0.0};
}

dist_spec dist_spec::pareto(double alpha, double x_min) {
  if (!(alpha > 1.0)) throw std::invalid_argument("pareto: alpha must exceed 1");
  if (!(x_min > 0.0)) throw std::invalid_argument("pareto: x_min must be positive");
  return {family::pareto, alpha, x_min};
}

double dist_spec::draw(std::mt19937_64& rng) const {
  switch (fam) {
    case family::normal: {
      std::normal_distribution<double> d(p1, p2);
      return d(rng);
    }
    case family::exponential: {
      std::exponential_distribution<double> d(1.0 / p1);
      return d(rng);
    }
    case family::chi_squared: {
      std::chi_squared_distribution<double> d(p1);
      return d(rng);
    }
    case family::pareto: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      return quantile(u(rng));
    }
  }
  throw std::logic_error("unreachable dist_spec family");
}

double dist_spec::pdf(double x) const {
  switch (fam) {
    case family::normal:
      return boost::math::pdf(boost::math::normal_distribution<double>(p1, p2), x);
    case family::exponential:
      return x < 0.0 ? 0.0 : std::exp(-x / p1) / p1;
    case family::chi_squared:
      return x < 0.0 ? 0.0
                     : boost::math::pdf(boost::math::chi_squared_distribution<double>(p1), x);
    case family::pareto:
      return x < p2 ? 0.0 : (p1 - 1.0) / p2 * std::pow(x / p2, -p1);
  }
  throw std::logic_error("unreachable dist_spec family");
}

double dist_spec::cdf(double x) const {
  switch (fam) {
    case family::normal:
      return boost::math::cdf(boost::math::normal_distribution<double>(p1, p2), x);
    case family::exponential:
      return x < 0.0 ? 0.0 : -std::expm1(-x / p1);
    case family::chi_squared:
      return x < 0.0 ? 0.0
                     : boost::math::cdf(boost::math::chi_squared_distribution<double>(p1), x);
    case family::pareto:
      return x < p2 ? 0.0 : 1.0 - std::pow(x / p2, 1.0 - p1);
  }
  throw std::logic_error("unreachable dist_spec family");
}

double dist_spec::quantile(double p) const {
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("dist quantile: p must lie in (0, 1)");
  switch (fam) {
    case family::normal:
      return boost::math::quantile(boost::math::normal_distribution<double>(p1, p2), p);
    case family::exponential:
      return -p1 * std::log1p(-p);
    case family::chi_squared:
      return boost::math::quantile(boost::math::chi_squared_distribution<double>(p1), p);
    case family::pareto:
      return p2 * std::pow(1.0 - p, -1.0 / (p1 - 1.0));
  }
  throw std::logic_error("unreachable dist_spec family");
}

double dist_spec::mean() const {
  switch (fam) {
    case family::normal:
      return p1;
    case family::exponential:
      return p1;
    case family::chi_squared:
      return p1;
    case family::pareto:
      if (!(p1 > 2.0)) throw std::domain_error("pareto mean requires alpha > 2");
      return p2 * (p1 - 1.0) / (p1 - 2.0);
  }
  throw std::logic_error("unreachable dist_spec family");
}

double dist_spec::variance() const {
  switch (fam) {
    case family::normal:
      return p2 * p2;
    case family::exponential:
      return p1 * p1;
    case family::chi_squared:
      return 2.0 * p1;
    case family::pareto: {
      if (!(p1 > 3.0)) throw std::domain_error("pareto variance requires alpha > 3");
      const double m = mean();
      const double second = p2 * p2 * (p1 - 1.0) / (p1 - 3.0);
      return second - m * m;
    }
  }
  throw std::logic_error("unreachable dist_spec family");
}

double dist_spec::support_low() const {
  switch (fam) {
    case family::normal:
      return -std::numeric_limits<double>::infinity();
    case family::exponential:
    case family::chi_squared:
      return 0.0;
    case family::pareto:
      return p2;
  }
  throw std::logic_error("unreachable dist_spec family");
}

stream_model stream_model::chi_squared5() {
  stream_model m;
  m.k = kind::chi_squared_5;
  return m;
}

stream_model stream_model::exponential_unit() {
  stream_model m;
  m.k = kind::exponential_unit;
  return m;
}

stream_model stream_model::normal_drift(double rate) {
  stream_model m;
  m.k = kind::normal_drift;
  m.drift_rate = rate;
  return m;
}

stream_model stream_model::exponential_drift(double rate) {
  stream_model m;
  m.k = kind::exponential_drift;
  m.drift_rate = rate;
  return m;
}

stream_model stream_model::change_point(dist_spec f1, dist_spec f2, std::uint64_t s) {
  stream_model m;
  m.k = kind::change_point;
  m.segment1 = f1;
  m.segment2 = f2;
  m.change_s = s;
  return m;
}

stream_model stream_model::pareto(double alpha, double x_min) {
  stream_model m;
  m.k = kind::pareto;
  m.pareto_alpha = alpha;
  m.pareto_xmin = x_min;
  return m;
}

dist_spec stream_model::distribution_at(std::uint64_t j) const {
  switch (k) {
    case kind::chi_squared_5:
      return dist_spec::chi_squared(5.0);
    case kind::exponential_unit:
      return dist_spec::exponential(1.0);
    case kind::normal_drift:
      return dist_spec::normal(drift_rate * static_cast<double>(j), 1.0);
    case kind::exponential_drift:
      return dist_spec::exponential(1.0 + drift_rate * static_cast<double>(j));
    case kind::change_point:
      // s+1 observations come from the first segment.
      return j <= change_s + 1 ? segment1 : segment2;
    case kind::pareto:
      return dist_spec::pareto(pareto_alpha, pareto_xmin);
  }
  throw std::logic_error("unreachable stream kind");
}

double stream_model::draw(std::mt19937_64& rng, std::uint64_t j) const {
  return distribution_at(j).draw(rng);
}

double stream_model::true_quantile(std::uint64_t j, double p) const {
  return distribution_at(j).quantile(p);
}

double stream_model::mean_at(std::uint64_t j) const { return distribution_at(j).mean(); }

double stream_model::variance_at(std::uint64_t j) const { return distribution_at(j).variance(); }

std::string stream_model::name() const {
  switch (k) {
    case kind::chi_squared_5:
      return "chi2";
    case kind::exponential_unit:
      return "exp";
    case kind::normal_drift:
      return "normal-drift";
    case kind::exponential_drift:
      return "exp-drift";
    case kind::change_point:
      return "change-point";
    case kind::pareto:
      return "pareto";
  }
  throw std::logic_error("unreachable stream kind");
}

stream_model stream_model::from_name(const std::string& name) {
  if (name == "chi2") return chi_squared5();
  if (name == "exp") return exponential_unit();
  if (name == "normal-drift") return normal_drift();
  if (name == "exp-drift") return exponential_drift();
  if (name == "change-point") {
    return change_point(dist_spec::normal(0.0, 1.0), dist_spec::normal(5.0, 1.0), 500);
  }
  if (name == "pareto") return pareto(3.0, 1.0);
  throw std::invalid_argument("unknown stream model: " + name);
}

}  // namespace hermiteq
