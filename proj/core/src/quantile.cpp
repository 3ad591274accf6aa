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

#include "hermiteq/quantile.hpp"

#include <cmath>
#include <stdexcept>

namespace hermiteq {

namespace {

constexpr double kMinDerivative = 1e-12;
constexpr int kMaxBisectIters = 200;

// Bisect the leftmost sign-changing cell of F - p over the bracket grid.
// Returns converged only when the residual target is met; a bracket that
// collapses onto a jump of the raw CDF stays non-converged.
quantile_result bisect_fallback(const distribution_snapshot& snapshot, double p,
                                const root_finder_settings& st, double lo, double hi) {
  const int cells = st.grid_points;
  const double width = (hi - lo) / static_cast<double>(cells);
  double a = lo;
  double ga = snapshot.standardized_cdf_raw(a) - p;
  double b = a;
  double gb = ga;
  bool bracketed = false;
  for (int i = 1; i <= cells; ++i) {
    b = lo + width * static_cast<double>(i);
    gb = snapshot.standardized_cdf_raw(b) - p;
    if (ga == 0.0 || (ga < 0.0) != (gb < 0.0)) {
      bracketed = true;
      break;
    }
    a = b;
    ga = gb;
  }
  if (!bracketed) {
    if (gb == 0.0) {
      return {snapshot.to_original(b), true, false};
    }
    return {std::nullopt, false, false};
  }
  if (std::abs(ga) <= st.tolerance) return {snapshot.to_original(a), true, false};
  if (std::abs(gb) <= st.tolerance) return {snapshot.to_original(b), true, false};
  for (int i = 0; i < kMaxBisectIters; ++i) {
    const double mid = 0.5 * (a + b);
    const double gm = snapshot.standardized_cdf_raw(mid) - p;
    if (std::abs(gm) <= st.tolerance) {
      return {snapshot.to_original(mid), true, false};
    }
    if ((gm < 0.0) == (ga < 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
    if (b - a < 1e-14 * std::max(1.0, std::abs(mid))) break;
  }
  return {std::nullopt, false, false};
}

}  // namespace

quantile_result invert_cdf(const distribution_snapshot& snapshot, double p,
                           const root_finder_settings& settings,
                           std::optional<double> warm_start_z) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("invert_cdf: p must lie in (0, 1)");
  if (snapshot.moments().count == 0) {
    throw std::logic_error("invert_cdf: snapshot has absorbed no observations");
  }
  settings.validate();

  // The positive-support form is undefined left of the origin.
  const double lo = snapshot.config().variant == cdf_variant::positive_support
                        ? std::max(settings.bracket_low, 0.0)
                        : settings.bracket_low;
  const double hi = settings.bracket_high;
  if (!(lo < hi)) return {std::nullopt, false, false};

  double z = warm_start_z.value_or(0.0);
  if (!std::isfinite(z) || z < lo || z > hi) z = std::min(std::max(0.0, lo), hi);

  for (int i = 0; i < settings.max_newton_iters; ++i) {
    const double residual = snapshot.standardized_cdf_raw(z) - p;
    if (std::abs(residual) <= settings.tolerance) {
      return {snapshot.to_original(z), true, false};
    }
    const double derivative = snapshot.standardized_pdf(z);
    if (!(std::abs(derivative) > kMinDerivative)) break;
    const double next = z - residual / derivative;
    if (!std::isfinite(next) || next < lo || next > hi) {
      break;
    }
    z = next;
  }
  return bisect_fallback(snapshot, p, settings, lo, hi);
}

quantile_result refine(quantile_result result, const distribution_snapshot& snapshot,
                       double x_min, double x_max, double d) {
  if (!(x_min < x_max)) throw std::invalid_argument("refine: requires x_min < x_max");
  if (!(d > 0.0)) throw std::invalid_argument("refine: requires d > 0");
  const auto reject = [&]() {
    quantile_result r = result;
    r.value.reset();
    r.refined_rejected = true;
    return r;
  };
  if (!result.converged || !result.value.has_value()) return reject();
  if (*result.value < x_min || *result.value > x_max) return reject();
  const int points = snapshot.config().root_finder.refine_grid_points;
  const double step = (x_max - x_min) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    const double x = (i + 1 == points) ? x_max : x_min + step * static_cast<double>(i);
    if (snapshot.pdf_at(x) < d) return reject();
  }
  result.refined_rejected = false;
  return result;
}

bool is_below_quantile(const distribution_snapshot& snapshot, double x, double p) {
  return snapshot.cdf_raw_at(x) < p;
}

}  // namespace hermiteq
