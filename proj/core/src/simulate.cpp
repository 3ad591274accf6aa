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

#include "hermiteq/simulate.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

#include "hermiteq/detail/parallel.hpp"
#include "hermiteq/estimator.hpp"
#include "hermiteq/oracle.hpp"
#include "json.hpp"

namespace hermiteq {

namespace {

std::string decimal17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::uint64_t> recorded_steps(std::uint64_t observations, std::uint64_t stride) {
  std::vector<std::uint64_t> steps;
  if (stride == 0) stride = 1;
  for (std::uint64_t j = stride; j < observations; j += stride) steps.push_back(j);
  steps.push_back(observations);
  return steps;
}

// Sliding-window comparator: order statistics over the last `window` values.
class window_quantile_tracker {
 public:
  explicit window_quantile_tracker(std::size_t window) : window_(window == 0 ? 1 : window) {}

  void observe(double x) {
    values_.push_back(x);
    if (values_.size() > window_) values_.pop_front();
  }

  std::optional<double> quantile(double p) const {
    if (values_.empty()) return std::nullopt;
    return empirical_distribution(std::vector<double>(values_.begin(), values_.end()))
        .quantile(p);
  }

 private:
  std::size_t window_;
  std::deque<double> values_;
};

}  // namespace

std::string to_string(algorithm_kind a) {
  return a == algorithm_kind::gauss_hermite ? "gh" : "window";
}

algorithm_kind algorithm_from_string(const std::string& s) {
  if (s == "gh") return algorithm_kind::gauss_hermite;
  if (s == "window") return algorithm_kind::sliding_window;
  throw std::invalid_argument("unknown algorithm: " + s);
}

void experiment_spec::validate() const {
  config.validate();
  if (runs < 2) throw std::invalid_argument("experiment: runs must be >= 2");
  if (observations < 1) throw std::invalid_argument("experiment: observations must be >= 1");
  if (bootstrap_resamples < 1) throw std::invalid_argument("experiment: bootstrap >= 1");
  if (quantiles.empty()) throw std::invalid_argument("experiment: no quantiles requested");
  for (double p : quantiles) {
    if (!(p > 0.0) || !(p < 1.0)) {
      throw std::invalid_argument("experiment: quantiles must lie in (0, 1)");
    }
  }
}

experiment_result run_experiment(const experiment_spec& spec) {
  spec.validate();
  const auto started = std::chrono::steady_clock::now();
  const auto steps = recorded_steps(spec.observations, spec.stride);
  const std::size_t n_p = spec.quantiles.size();
  const std::size_t n_steps = steps.size();
  const std::size_t n_runs = static_cast<std::size_t>(spec.runs);

  // errors[p][step][run]; NaN marks a step with no usable estimate.
  std::vector<std::vector<std::vector<double>>> errors(
      n_p, std::vector<std::vector<double>>(n_steps, std::vector<double>(n_runs, 0.0)));
  std::atomic<std::uint64_t> non_converged{0};
  std::atomic<std::uint64_t> unusable{0};

  detail::parallel_for_runs(spec.runs, spec.threads, [&](int run) {
    std::mt19937_64 rng(spec.seed + 1 + static_cast<std::uint64_t>(run));
    std::optional<streaming_estimator> est;
    std::optional<window_quantile_tracker> tracker;
    if (spec.algorithm == algorithm_kind::gauss_hermite) {
      est.emplace(spec.config);
    } else {
      tracker.emplace(static_cast<std::size_t>(effective_window(spec.config.lambda)));
    }
    std::vector<std::optional<double>> last(n_p);
    std::size_t si = 0;
    for (std::uint64_t j = 1; j <= spec.observations; ++j) {
      const double x = spec.model.draw(rng, j);
      if (est) {
        est->observe(x);
      } else {
        tracker->observe(x);
      }
      if (si < n_steps && j == steps[si]) {
        for (std::size_t qi = 0; qi < n_p; ++qi) {
          const double p = spec.quantiles[qi];
          if (est) {
            const auto res = est->quantile(p);
            if (res.converged && res.value.has_value()) {
              last[qi] = *res.value;
            } else {
              non_converged.fetch_add(1, std::memory_order_relaxed);
            }
          } else {
            last[qi] = tracker->quantile(p);
          }
          const double truth = spec.model.true_quantile(j, p);
          if (last[qi].has_value()) {
            const double e = *last[qi] - truth;
            errors[qi][si][static_cast<std::size_t>(run)] = e * e;
          } else {
            errors[qi][si][static_cast<std::size_t>(run)] =
                std::numeric_limits<double>::quiet_NaN();
            unusable.fetch_add(1, std::memory_order_relaxed);
          }
        }
        ++si;
      }
    }
  });

  experiment_result result;
  result.non_converged = non_converged.load();
  result.unusable = unusable.load();

  std::mt19937_64 boot_rng(spec.seed);
  const int resamples = spec.bootstrap_resamples;
  for (std::size_t qi = 0; qi < n_p; ++qi) {
    rmse_curve curve;
    curve.p = spec.quantiles[qi];
    for (std::size_t si = 0; si < n_steps; ++si) {
      std::vector<double> usable;
      usable.reserve(n_runs);
      for (double e : errors[qi][si]) {
        if (!std::isnan(e)) usable.push_back(e);
      }
      rmse_point point;
      point.step = steps[si];
      if (usable.empty()) {
        point.rmse = std::numeric_limits<double>::quiet_NaN();
        point.ci_low = point.ci_high = point.rmse;
        curve.points.push_back(point);
        continue;
      }
      double mean = 0.0;
      for (double e : usable) mean += e;
      mean /= static_cast<double>(usable.size());
      point.rmse = std::sqrt(mean);

      std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);
      std::vector<double> boot(static_cast<std::size_t>(resamples));
      for (int b = 0; b < resamples; ++b) {
        double acc = 0.0;
        for (std::size_t r = 0; r < usable.size(); ++r) acc += usable[pick(boot_rng)];
        boot[static_cast<std::size_t>(b)] = std::sqrt(acc / static_cast<double>(usable.size()));
      }
      const empirical_distribution dist(std::move(boot));
      point.ci_low = dist.quantile(0.025);
      point.ci_high = dist.quantile(0.975);
      curve.points.push_back(point);
    }
    result.curves.push_back(std::move(curve));
  }

  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

std::string experiment_result::to_csv() const {
  std::string out = "p,j,rmse,ci_low,ci_high\n";
  for (const auto& curve : curves) {
    for (const auto& pt : curve.points) {
      out += decimal17(curve.p);
      out += ',';
      out += std::to_string(pt.step);
      out += ',';
      out += decimal17(pt.rmse);
      out += ',';
      out += decimal17(pt.ci_low);
      out += ',';
      out += decimal17(pt.ci_high);
      out += '\n';
    }
  }
  return out;
}

std::string experiment_result::summary_json(const experiment_spec& spec) const {
  nlohmann::json j;
  j["model"] = spec.model.name();
  j["algorithm"] = to_string(spec.algorithm);
  j["config"] = nlohmann::json::parse(spec.config.to_json());
  j["quantiles"] = spec.quantiles;
  j["observations"] = spec.observations;
  j["runs"] = spec.runs;
  j["bootstrap_resamples"] = spec.bootstrap_resamples;
  j["seed"] = spec.seed;
  j["stride"] = spec.stride;
  j["non_converged"] = non_converged;
  j["unusable"] = unusable;
  j["elapsed_seconds"] = elapsed_seconds;
  return j.dump();
}

std::string coverage_result::to_json() const {
  nlohmann::json j;
  j["quantiles"] = quantiles;
  j["frequency"] = frequency;
  j["counted"] = counted;
  j["excluded"] = excluded;
  return j.dump();
}

namespace {

coverage_result coverage_over(const std::function<double(std::uint64_t)>& next_value,
                              std::uint64_t observations, const estimator_config& config,
                              std::span<const double> quantiles) {
  coverage_result result;
  result.quantiles.assign(quantiles.begin(), quantiles.end());
  result.frequency.assign(quantiles.size(), 0.0);
  result.counted.assign(quantiles.size(), 0);
  result.excluded.assign(quantiles.size(), 0);
  if (observations == 0) return result;

  streaming_estimator est(config);
  std::vector<std::uint64_t> below(quantiles.size(), 0);
  est.observe(next_value(1));
  for (std::uint64_t i = 2; i <= observations; ++i) {
    const double x = next_value(i);
    for (std::size_t qi = 0; qi < quantiles.size(); ++qi) {
      const auto res = est.quantile(quantiles[qi]);
      if (res.converged && res.value.has_value()) {
        ++result.counted[qi];
        if (x < *res.value) ++below[qi];
      } else {
        ++result.excluded[qi];
      }
    }
    est.observe(x);
  }
  for (std::size_t qi = 0; qi < quantiles.size(); ++qi) {
    result.frequency[qi] = result.counted[qi] == 0
                               ? 0.0
                               : static_cast<double>(below[qi]) /
                                     static_cast<double>(result.counted[qi]);
  }
  return result;
}

}  // namespace

coverage_result coverage_test(const stream_model& model, const estimator_config& config,
                              std::span<const double> quantiles, std::uint64_t observations,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  return coverage_over([&](std::uint64_t j) { return model.draw(rng, j); }, observations, config,
                       quantiles);
}

coverage_result coverage_test(std::span<const double> stream, const estimator_config& config,
                              std::span<const double> quantiles) {
  return coverage_over([&](std::uint64_t j) { return stream[j - 1]; }, stream.size(), config,
                       quantiles);
}

}  // namespace hermiteq
