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

#include "hermiteq/snapshot.hpp"

#include <stdexcept>

#include "json.hpp"

namespace hermiteq {

void root_finder_settings::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("root finder tolerance must be positive");
  if (max_newton_iters < 1) throw std::invalid_argument("max_newton_iters must be >= 1");
  if (!(bracket_low < bracket_high)) throw std::invalid_argument("bracket low must be < high");
  if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
  if (refine_grid_points < 2) throw std::invalid_argument("refine_grid_points must be >= 2");
}

void estimator_config::validate() const {
  if (n_terms < 1 || n_terms > 32) throw std::invalid_argument("n_terms must lie in [1, 32]");
  if (mode == update_mode::ewgh && (!(lambda > 0.0) || !(lambda <= 1.0))) {
    throw std::invalid_argument("ewgh lambda must lie in (0, 1]");
  }
  root_finder.validate();
}

std::string estimator_config::to_json() const {
  nlohmann::json j;
  j["n_terms"] = n_terms;
  j["mode"] = to_string(mode);
  j["lambda"] = lambda;
  j["standardize"] = standardize;
  j["cdf_variant"] = to_string(variant);
  j["tolerance"] = root_finder.tolerance;
  j["max_newton_iters"] = root_finder.max_newton_iters;
  j["bracket_low"] = root_finder.bracket_low;
  j["bracket_high"] = root_finder.bracket_high;
  j["grid_points"] = root_finder.grid_points;
  j["refine_grid_points"] = root_finder.refine_grid_points;
  return j.dump();
}

estimator_config estimator_config::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  estimator_config cfg;
  cfg.n_terms = j.at("n_terms").get<int>();
  cfg.mode = update_mode_from_string(j.at("mode").get<std::string>());
  cfg.lambda = j.at("lambda").get<double>();
  cfg.standardize = j.at("standardize").get<bool>();
  cfg.variant = cdf_variant_from_string(j.at("cdf_variant").get<std::string>());
  cfg.root_finder.tolerance = j.at("tolerance").get<double>();
  cfg.root_finder.max_newton_iters = j.at("max_newton_iters").get<int>();
  cfg.root_finder.bracket_low = j.at("bracket_low").get<double>();
  cfg.root_finder.bracket_high = j.at("bracket_high").get<double>();
  cfg.root_finder.grid_points = j.at("grid_points").get<int>();
  cfg.root_finder.refine_grid_points = j.at("refine_grid_points").get<int>();
  cfg.validate();
  return cfg;
}

distribution_snapshot::distribution_snapshot(coefficient_vector coefficients, scale_state moments,
                                             estimator_config config,
                                             std::shared_ptr<const cdf_coefficient_table> table)
    : coefficients_(std::move(coefficients)),
      moments_(moments),
      config_(std::move(config)),
      table_(std::move(table)) {
  if (!table_) table_ = std::make_shared<const cdf_coefficient_table>(coefficients_.order());
  if (table_->order() != coefficients_.order()) {
    throw std::invalid_argument("snapshot: table order does not match coefficients");
  }
}

double distribution_snapshot::to_original(double z) const {
  return moments_.sigma * z + moments_.mu;
}

double distribution_snapshot::to_standardized(double x) const {
  return (x - moments_.mu) / moments_.sigma;
}

double distribution_snapshot::standardized_pdf(double z) const {
  return gauss_hermite_pdf(coefficients_.values(), z);
}

double distribution_snapshot::standardized_cdf_raw(double z) const {
  return table_->cdf(coefficients_.values(), z, config_.variant);
}

double distribution_snapshot::pdf_at(double x) const {
  return standardized_pdf(to_standardized(x)) / moments_.sigma;
}

double distribution_snapshot::cdf_at(double x) const {
  return clamp_probability(cdf_raw_at(x));
}

double distribution_snapshot::cdf_raw_at(double x, cdf_variant variant) const {
  return table_->cdf(coefficients_.values(), to_standardized(x), variant);
}

std::string distribution_snapshot::to_json() const {
  nlohmann::json j;
  j["coefficients"] = nlohmann::json::parse(coefficients_.to_json());
  j["moments"] = {{"mu", moments_.mu}, {"sigma", moments_.sigma}, {"count", moments_.count}};
  j["config"] = nlohmann::json::parse(config_.to_json());
  return j.dump();
}

distribution_snapshot distribution_snapshot::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  auto coefficients = coefficient_vector::from_json(j.at("coefficients").dump());
  scale_state moments;
  moments.mu = j.at("moments").at("mu").get<double>();
  moments.sigma = j.at("moments").at("sigma").get<double>();
  moments.count = j.at("moments").at("count").get<std::uint64_t>();
  auto config = estimator_config::from_json(j.at("config").dump());
  return distribution_snapshot(std::move(coefficients), moments, std::move(config), nullptr);
}

}  // namespace hermiteq
