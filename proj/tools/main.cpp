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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hermiteq/estimator.hpp"
#include "hermiteq/oracle.hpp"
#include "hermiteq/simulate.hpp"
#include "json.hpp"

namespace {

using namespace hermiteq;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string decimal17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct run_options {
  std::string input = "-";
  std::string mode = "static";
  int n_terms = 6;
  double lambda = 0.05;
  bool no_standardize = false;
  std::string variant = "alternative";
  std::vector<double> quantiles{0.5, 0.9, 0.99};
  std::uint64_t emit_every = 1000;
  std::string format = "jsonl";
  std::vector<double> cdf_probes;
  bool coverage = false;
};

estimator_config make_config(const std::string& mode, int n_terms, double lambda,
                             bool no_standardize, const std::string& variant) {
  estimator_config cfg;
  cfg.n_terms = n_terms;
  cfg.mode = update_mode_from_string(mode);
  cfg.lambda = lambda;
  cfg.standardize = !no_standardize;
  cfg.variant = cdf_variant_from_string(variant);
  cfg.validate();
  return cfg;
}

void emit_record(const run_options& opt, streaming_estimator& est, std::uint64_t index,
                 bool print_header) {
  if (opt.format == "csv") {
    if (print_header) {
      std::string header = "index,count";
      for (double p : opt.quantiles) header += ",q" + decimal17(p) + ",converged";
      for (double x : opt.cdf_probes) header += ",cdf" + decimal17(x);
      std::cout << header << '\n';
    }
    std::string row = std::to_string(index) + ',' + std::to_string(est.count());
    for (double p : opt.quantiles) {
      const auto res = est.quantile(p);
      row += ',';
      row += res.value.has_value() ? decimal17(*res.value) : "nan";
      row += res.converged ? ",1" : ",0";
    }
    for (double x : opt.cdf_probes) row += ',' + decimal17(est.cdf_at(x));
    std::cout << row << '\n';
    return;
  }
  nlohmann::json j;
  j["index"] = index;
  j["count"] = est.count();
  nlohmann::json qs = nlohmann::json::object();
  for (double p : opt.quantiles) {
    const auto res = est.quantile(p);
    nlohmann::json q;
    q["converged"] = res.converged;
    if (res.value.has_value()) {
      q["value"] = *res.value;
    } else {
      q["value"] = nullptr;
    }
    qs[decimal17(p)] = q;
  }
  j["quantiles"] = qs;
  if (!opt.cdf_probes.empty()) {
    nlohmann::json cs = nlohmann::json::object();
    for (double x : opt.cdf_probes) cs[decimal17(x)] = est.cdf_at(x);
    j["cdf"] = cs;
  }
  std::cout << j.dump() << '\n';
}

int run_stream(const run_options& opt) {
  estimator_config cfg;
  try {
    cfg = make_config(opt.mode, opt.n_terms, opt.lambda, opt.no_standardize, opt.variant);
    for (double p : opt.quantiles) {
      if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("quantiles must lie in (0,1)");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ifstream file;
  if (opt.input != "-") {
    file.open(opt.input);
    if (!file) {
      std::cerr << "error: cannot open input file: " << opt.input << '\n';
      return kExitData;
    }
  }
  std::istream& in = opt.input == "-" ? std::cin : file;

  streaming_estimator est(cfg);
  // Coverage counters run online, before each observation, so the stream is
  // never buffered and memory stays constant in its length.
  coverage_result cov;
  cov.quantiles = opt.quantiles;
  cov.frequency.assign(opt.quantiles.size(), 0.0);
  cov.counted.assign(opt.quantiles.size(), 0);
  cov.excluded.assign(opt.quantiles.size(), 0);
  std::vector<std::uint64_t> below(opt.quantiles.size(), 0);

  std::string line;
  std::uint64_t line_no = 0;
  std::uint64_t parsed = 0;
  std::uint64_t skipped = 0;
  bool header_pending = true;
  while (std::getline(in, line)) {
    ++line_no;
    // Blank lines are skipped silently.
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(begin, end - begin + 1);
    char* parse_end = nullptr;
    const double x = std::strtod(token.c_str(), &parse_end);
    if (parse_end == token.c_str() || *parse_end != '\0' || !std::isfinite(x)) {
      std::cerr << "skipping line " << line_no << ": not a finite number: " << token << '\n';
      ++skipped;
      continue;
    }
    if (opt.coverage && parsed >= 1) {
      for (std::size_t qi = 0; qi < opt.quantiles.size(); ++qi) {
        const auto res = est.quantile(opt.quantiles[qi]);
        if (res.converged && res.value.has_value()) {
          ++cov.counted[qi];
          if (x < *res.value) ++below[qi];
        } else {
          ++cov.excluded[qi];
        }
      }
    }
    est.observe(x);
    ++parsed;
    if (opt.emit_every > 0 && parsed % opt.emit_every == 0) {
      emit_record(opt, est, parsed, header_pending);
      header_pending = false;
    }
  }

  if (parsed == 0) {
    std::cerr << "0 observations" << (skipped > 0 ? " (all lines failed to parse)" : "") << '\n';
    return skipped > 0 ? kExitData : kExitOk;
  }
  if (opt.emit_every == 0 || parsed % opt.emit_every != 0) {
    emit_record(opt, est, parsed, header_pending);
  }
  if (opt.coverage) {
    for (std::size_t qi = 0; qi < opt.quantiles.size(); ++qi) {
      cov.frequency[qi] = cov.counted[qi] == 0 ? 0.0
                                               : static_cast<double>(below[qi]) /
                                                     static_cast<double>(cov.counted[qi]);
    }
    std::cout << cov.to_json() << '\n';
  }
  std::cerr << "processed " << parsed << " observations (" << skipped << " skipped)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-pass streaming CDF and quantile estimation"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Base seed for anything randomized")
      ->envname("HERMITEQ_SEED");

  // --- run -----------------------------------------------------------------
  run_options ropt;
  auto* run = app.add_subcommand("run", "Stream newline-delimited numbers from a file or stdin");
  run->fallthrough();
  run->add_option("input", ropt.input, "Input path, or - for stdin")->capture_default_str();
  run->add_option("--mode", ropt.mode, "static | ewgh")->capture_default_str();
  run->add_option("--n-terms", ropt.n_terms, "Truncation order N")->capture_default_str();
  run->add_option("--lambda", ropt.lambda, "EWGH weight")->capture_default_str();
  run->add_flag("--no-standardize", ropt.no_standardize, "Disable online standardization");
  run->add_option("--variant", ropt.variant, "full_line | alternative | positive_support")
      ->capture_default_str();
  run->add_option("--quantiles", ropt.quantiles, "Quantile probabilities")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--emit-every", ropt.emit_every, "Emit a record every K observations")
      ->capture_default_str();
  run->add_option("--format", ropt.format, "jsonl | csv")->capture_default_str();
  run->add_option("--cdf", ropt.cdf_probes, "CDF probe points to include in records")
      ->delimiter(',');
  run->add_flag("--coverage", ropt.coverage,
                "After the stream, report out-of-sample below-quantile frequencies");

  // --- simulate --------------------------------------------------------------
  std::string sim_model = "chi2";
  std::string sim_mode = "static";
  std::string sim_algorithm = "gh";
  int sim_n_terms = 6;
  double sim_lambda = 0.05;
  bool sim_no_standardize = false;
  std::string sim_variant = "alternative";
  std::vector<double> sim_quantiles{0.5, 0.9, 0.99};
  std::uint64_t sim_observations = 4000;
  int sim_runs = 1000;
  int sim_bootstrap = 1000;
  std::uint64_t sim_stride = 1;
  std::string sim_out;
  std::string sim_summary;
  auto* sim = app.add_subcommand("simulate", "Multi-run RMSE experiment with bootstrap CIs");
  sim->fallthrough();
  sim->add_option("--model", sim_model,
                  "chi2 | exp | normal-drift | exp-drift | change-point | pareto")
      ->capture_default_str();
  sim->add_option("--mode", sim_mode, "static | ewgh")->capture_default_str();
  sim->add_option("--algorithm", sim_algorithm, "gh | window (sliding-window baseline)")
      ->capture_default_str();
  sim->add_option("--n-terms", sim_n_terms, "Truncation order N")->capture_default_str();
  sim->add_option("--lambda", sim_lambda, "EWGH weight / baseline window parameter")
      ->capture_default_str();
  sim->add_flag("--no-standardize", sim_no_standardize, "Disable online standardization");
  sim->add_option("--variant", sim_variant, "CDF variant")->capture_default_str();
  sim->add_option("--quantiles", sim_quantiles, "Quantile probabilities")
      ->delimiter(',')
      ->capture_default_str();
  sim->add_option("--observations", sim_observations, "Observations per run m")
      ->capture_default_str();
  sim->add_option("--runs", sim_runs, "Independent runs")->capture_default_str();
  sim->add_option("--bootstrap", sim_bootstrap, "Bootstrap resamples per recorded step")
      ->capture_default_str();
  sim->add_option("--stride", sim_stride, "Record RMSE every stride steps")
      ->capture_default_str();
  sim->add_option("--out", sim_out, "Write the RMSE CSV here (default stdout)");
  sim->add_option("--summary", sim_summary, "Write the JSON summary here (default stderr)");

  // --- verify ----------------------------------------------------------------
  std::string ver_check = "cdf-mse-bound";
  std::string ver_model = "exp";
  int ver_runs = 500;
  int ver_observations = 500;
  int ver_n_terms = 6;
  std::vector<double> ver_grid{0.5, 1.0, 2.0, 4.0};
  std::uint64_t ver_s = 500;
  std::uint64_t ver_t = 500;
  double ver_lambda = 0.05;
  int ver_k = 0;
  auto* ver = app.add_subcommand("verify", "Monte Carlo bound and identity checks");
  ver->fallthrough();
  ver->add_option("--check", ver_check, "cdf-mse-bound | omega-bound | ewgh-coeff-mse")
      ->capture_default_str();
  ver->add_option("--model", ver_model, "exp | chi2 | pareto (i.i.d. checks)")
      ->capture_default_str();
  ver->add_option("--runs", ver_runs, "Monte Carlo runs")->capture_default_str();
  ver->add_option("--observations", ver_observations, "Observations per run")
      ->capture_default_str();
  ver->add_option("--n-terms", ver_n_terms, "Truncation order N")->capture_default_str();
  ver->add_option("--x-grid", ver_grid, "Probe points for cdf-mse-bound")->delimiter(',');
  ver->add_option("--s", ver_s, "Change point: observations from f1 are s+1")
      ->capture_default_str();
  ver->add_option("--t", ver_t, "Change point: observations from f2")->capture_default_str();
  ver->add_option("--lambda", ver_lambda, "EWGH weight")->capture_default_str();
  ver->add_option("--k", ver_k, "Coefficient index for ewgh-coeff-mse")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) {
      return run_stream(ropt);
    }
    if (sim->parsed()) {
      experiment_spec spec;
      spec.model = stream_model::from_name(sim_model);
      spec.config =
          make_config(sim_mode, sim_n_terms, sim_lambda, sim_no_standardize, sim_variant);
      spec.algorithm = algorithm_from_string(sim_algorithm);
      spec.quantiles = sim_quantiles;
      spec.observations = sim_observations;
      spec.runs = sim_runs;
      spec.bootstrap_resamples = sim_bootstrap;
      spec.seed = seed;
      spec.stride = sim_stride;
      const auto result = run_experiment(spec);
      if (sim_out.empty()) {
        std::cout << result.to_csv();
      } else {
        std::ofstream out(sim_out);
        if (!out) throw std::runtime_error("cannot open output file: " + sim_out);
        out << result.to_csv();
      }
      if (sim_summary.empty()) {
        std::cerr << result.summary_json(spec) << '\n';
      } else {
        std::ofstream out(sim_summary);
        if (!out) throw std::runtime_error("cannot open summary file: " + sim_summary);
        out << result.summary_json(spec) << '\n';
      }
      return kExitOk;
    }
    if (ver->parsed()) {
      estimator_config cfg;
      cfg.n_terms = ver_n_terms;
      bound_report report;
      if (ver_check == "cdf-mse-bound") {
        report = check_cdf_mse_bound(stream_model::from_name(ver_model), cfg, ver_grid,
                                     ver_observations, ver_runs, seed);
      } else if (ver_check == "omega-bound") {
        report = check_omega_bound(stream_model::from_name(ver_model), cfg, ver_observations,
                                   ver_runs, seed);
      } else if (ver_check == "ewgh-coeff-mse") {
        const auto model = stream_model::change_point(dist_spec::normal(0.0, 1.0),
                                                      dist_spec::normal(5.0, 1.0), ver_s);
        report = check_ewgh_coefficient_mse(model, ver_t, ver_lambda, ver_k, ver_runs, seed);
      } else {
        std::cerr << "error: unknown check: " << ver_check << '\n';
        return kExitUsage;
      }
      std::cout << report.to_json() << '\n';
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
