#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "skillver/calibration.hpp"
#include "skillver/ensemble.hpp"
#include "skillver/errors.hpp"
#include "skillver/metrics.hpp"
#include "skillver/reference.hpp"
#include "skillver/series.hpp"
#include "skillver/synth.hpp"
#include "skillver/version.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
  std::string input;
  std::string obs_col = "obs";
  std::vector<std::string> fcst_cols;
  int horizon = 1;
  std::string normalize = "mean";
  double qc_min_obs = 0.0;
  bool qc_set = false;
  std::string format = "text";
  std::string out;
  std::string svg;
  std::string scheme = "mse";
};

struct SynthOpts {
  skillver::SynthSpec spec;
  std::size_t ensemble_count = 0;
  std::string out;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string pct(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * v);
  return buf;
}

std::string shortnum(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw skillver::DataError("cannot write " + out_path);
  out << content;
  if (!out) throw skillver::DataError("failed writing " + out_path);
}

// Secondary report channel: stdout when the primary output went to a file,
// stderr when the primary output occupies stdout.
std::ostream& report_stream(const CommonOpts& opts) {
  return opts.out.empty() ? std::cerr : std::cout;
}

double resolve_normalizer(const std::string& mode, const skillver::ObservationSeries& obs) {
  if (mode == "mean") {
    const double m = skillver::moments(obs.values).mean;
    if (!(m > 0.0)) {
      throw skillver::DegenerateError(
          "mean normalization requires a positive observation mean; use "
          "--normalize capacity:<value>");
    }
    return m;
  }
  const std::string prefix = "capacity:";
  if (mode.rfind(prefix, 0) == 0) {
    double value = 0.0;
    try {
      value = std::stod(mode.substr(prefix.size()));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad capacity value in --normalize " + mode);
    }
    if (!(value > 0.0)) throw std::invalid_argument("capacity must be positive");
    return value;
  }
  throw std::invalid_argument("--normalize expects 'mean' or 'capacity:<value>'");
}

std::optional<double> qc_threshold(const CommonOpts& opts) {
  if (opts.qc_set) return opts.qc_min_obs;
  return std::nullopt;
}

ordered_json report_json(const skillver::SkillReport& r) {
  ordered_json j;
  j["n"] = r.n;
  j["horizon_h"] = r.horizon_h;
  j["rho"] = r.rho;
  j["gamma_h"] = r.gamma_h;
  j["sigma_x"] = r.sigma_x;
  j["rmse_f"] = r.rmse_f;
  j["mae_f"] = r.mae_f;
  j["nmae"] = r.nmae;
  j["nrmse"] = r.nrmse;
  j["rmse_cliper"] = r.rmse_cliper;
  j["mae_cliper"] = r.mae_cliper;
  j["s_rmse_actual"] = r.s_rmse_actual;
  j["s_mae_actual"] = r.s_mae_actual;
  j["s_rmse_potential"] = r.s_rmse_potential;
  j["s_mse_potential"] = r.s_mse_potential;
  j["mase"] = r.mase;
  j["warnings"] = r.warnings;
  return j;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string report_text(const std::string& name, const skillver::SkillReport& r) {
  std::string out;
  out += "forecast " + name + " (n=" + std::to_string(r.n) +
         ", overlap=" + std::to_string(r.n_overlap) +
         ", horizon=" + std::to_string(r.horizon_h) + ")\n";
  const auto line = [&out](const char* label, const std::string& value) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "  %-18s %s\n", label, value.c_str());
    out += buf;
  };
  line("rho", shortnum(r.rho));
  line("gamma_h", shortnum(r.gamma_h));
  line("sigma_x", shortnum(r.sigma_x));
  line("rmse_f", shortnum(r.rmse_f));
  line("mae_f", shortnum(r.mae_f));
  line("nmae", shortnum(r.nmae));
  line("nrmse", shortnum(r.nrmse));
  line("normalizer", shortnum(r.normalizer));
  line("rmse_cliper", shortnum(r.rmse_cliper));
  line("mae_cliper", shortnum(r.mae_cliper));
  line("s_rmse_actual", pct(r.s_rmse_actual));
  line("s_mae_actual", pct(r.s_mae_actual));
  line("s_rmse_potential", pct(r.s_rmse_potential));
  line("s_mse_potential", pct(r.s_mse_potential));
  line("mase", shortnum(r.mase));
  line("warnings", r.warnings.empty() ? "none" : join(r.warnings, ", "));
  return out;
}

int run_score(const CommonOpts& opts) {
  const skillver::IngestResult data =
      skillver::ingest_csv(opts.input, opts.obs_col, opts.fcst_cols, qc_threshold(opts));
  const double normalizer = resolve_normalizer(opts.normalize, data.obs);

  std::vector<std::pair<std::string, skillver::SkillReport>> reports;
  for (const auto& fcst : data.forecasts) {
    const skillver::PairedSeries p = skillver::pair(data.obs, fcst);
    reports.emplace_back(fcst.name, skillver::verify(p, data.obs, opts.horizon, normalizer));
  }

  std::string rendered;
  if (opts.format == "json") {
    if (reports.size() == 1) {
      rendered = report_json(reports.front().second).dump(2) + "\n";
    } else {
      ordered_json j;
      for (const auto& [name, r] : reports) j[name] = report_json(r);
      rendered = j.dump(2) + "\n";
    }
  } else if (opts.format == "csv") {
    rendered =
        "name,n,horizon_h,rho,gamma_h,sigma_x,rmse_f,mae_f,nmae,nrmse,rmse_cliper,"
        "mae_cliper,s_rmse_actual,s_mae_actual,s_rmse_potential,s_mse_potential,mase,"
        "warnings\n";
    for (const auto& [name, r] : reports) {
      rendered += name + ',' + std::to_string(r.n) + ',' + std::to_string(r.horizon_h) +
                  ',' + num(r.rho) + ',' + num(r.gamma_h) + ',' + num(r.sigma_x) + ',' +
                  num(r.rmse_f) + ',' + num(r.mae_f) + ',' + num(r.nmae) + ',' +
                  num(r.nrmse) + ',' + num(r.rmse_cliper) + ',' + num(r.mae_cliper) + ',' +
                  num(r.s_rmse_actual) + ',' + num(r.s_mae_actual) + ',' +
                  num(r.s_rmse_potential) + ',' + num(r.s_mse_potential) + ',' +
                  num(r.mase) + ',' + join(r.warnings, ";") + '\n';
    }
  } else {
    for (const auto& [name, r] : reports) rendered += report_text(name, r);
  }
  write_output(rendered, opts.out);
  return 0;
}

int run_calibrate(const CommonOpts& opts) {
  const skillver::IngestResult data =
      skillver::ingest_csv(opts.input, opts.obs_col, opts.fcst_cols, qc_threshold(opts));
  const skillver::CalibrationScheme scheme =
      skillver::calibration_scheme_from_string(opts.scheme);

  std::vector<skillver::LinearCalibration> fits;
  std::vector<std::vector<double>> calibrated;
  for (const auto& fcst : data.forecasts) {
    const skillver::PairedSeries p = skillver::pair(data.obs, fcst);
    skillver::LinearCalibration fit;
    switch (scheme) {
      case skillver::CalibrationScheme::mse: fit = skillver::fit_mse_linear(p); break;
      case skillver::CalibrationScheme::mae: fit = skillver::fit_mae_linear(p); break;
      case skillver::CalibrationScheme::variance:
        fit = skillver::fit_variance_linear(p);
        break;
    }
    calibrated.push_back(fit.apply(fcst.values));
    fits.push_back(fit);
  }

  // Output table: kept rows with the selected columns plus one calibrated
  // column per forecast.
  std::string table;
  const bool has_time = data.obs.timestamps.has_value();
  if (has_time) table += "time,";
  table += opts.obs_col;
  for (const auto& fcst : data.forecasts) {
    table += ',' + fcst.name + ',' + fcst.name + "_cal_" + opts.scheme;
  }
  table += '\n';
  for (std::size_t row = 0; row < data.obs.size(); ++row) {
    if (has_time) table += (*data.obs.timestamps)[row] + ',';
    table += num(data.obs.values[row]);
    for (std::size_t k = 0; k < data.forecasts.size(); ++k) {
      table += ',' + num(data.forecasts[k].values[row]) + ',' + num(calibrated[k][row]);
    }
    table += '\n';
  }
  write_output(table, opts.out);

  std::ostream& rep = report_stream(opts);
  if (opts.format == "json") {
    ordered_json j = ordered_json::array();
    for (std::size_t k = 0; k < fits.size(); ++k) {
      ordered_json e;
      e["forecast"] = data.forecasts[k].name;
      e["scheme"] = skillver::to_string(fits[k].scheme);
      e["intercept_a"] = fits[k].intercept_a;
      e["gain_b"] = fits[k].gain_b;
      e["fit_n"] = fits[k].fit_n;
      e["converged"] = fits[k].converged;
      j.push_back(e);
    }
    rep << j.dump(2) << "\n";
  } else if (opts.format == "csv") {
    rep << "forecast,scheme,intercept_a,gain_b,fit_n,converged\n";
    for (std::size_t k = 0; k < fits.size(); ++k) {
      rep << data.forecasts[k].name << ',' << skillver::to_string(fits[k].scheme) << ','
          << num(fits[k].intercept_a) << ',' << num(fits[k].gain_b) << ','
          << fits[k].fit_n << ',' << (fits[k].converged ? "true" : "false") << "\n";
    }
  } else {
    for (std::size_t k = 0; k < fits.size(); ++k) {
      rep << data.forecasts[k].name << ": scheme=" << skillver::to_string(fits[k].scheme)
          << " a=" << num(fits[k].intercept_a) << " b=" << num(fits[k].gain_b)
          << " fit_n=" << fits[k].fit_n
          << " converged=" << (fits[k].converged ? "true" : "false") << "\n";
    }
  }
  return 0;
}

int run_ensemble(const CommonOpts& opts) {
  const skillver::IngestResult data =
      skillver::ingest_csv(opts.input, opts.obs_col, opts.fcst_cols, qc_threshold(opts));
  const double normalizer = resolve_normalizer(opts.normalize, data.obs);
  const std::vector<skillver::EnsembleRow> rows =
      skillver::evaluate_ensemble(data.obs, data.forecasts, opts.horizon, normalizer);

  write_output(skillver::scatter_csv(rows), opts.out);
  if (!opts.svg.empty()) {
    std::ofstream svg(opts.svg);
    if (!svg) throw skillver::DataError("cannot write " + opts.svg);
    svg << skillver::scatter_svg(rows);
    if (!svg) throw skillver::DataError("failed writing " + opts.svg);
  }

  std::size_t front_size = 0;
  const skillver::EnsembleRow* best_mae = nullptr;
  const skillver::EnsembleRow* best_rmse = nullptr;
  const skillver::EnsembleRow* best_pot = nullptr;
  for (const auto& row : rows) {
    if (row.on_front) ++front_size;
    if (row.degenerate) continue;
    if (!best_mae || row.nmae < best_mae->nmae) best_mae = &row;
    if (!best_rmse || row.nrmse < best_rmse->nrmse) best_rmse = &row;
    if (!best_pot || row.s_rmse_potential > best_pot->s_rmse_potential) best_pot = &row;
  }
  if (!best_mae) throw skillver::DegenerateError("every forecast set is degenerate");

  report_stream(opts) << "front " << front_size << " of " << rows.size()
                      << " sets; min nmae " << best_mae->name << "; min nrmse "
                      << best_rmse->name << "; max potential " << best_pot->name << "\n";
  return 0;
}

int run_synth(const SynthOpts& opts) {
  opts.spec.validate();
  if (opts.ensemble_count == 1) {
    throw std::invalid_argument("--ensemble-count must be 0 or >= 2");
  }

  // One user seed, one independent stream per generated series.
  std::mt19937_64 master(opts.spec.seed);
  const std::uint64_t obs_seed = master();
  const std::uint64_t fcst_seed = master();
  const std::uint64_t ens_seed = master();

  const skillver::ObservationSeries obs =
      skillver::gen_ar1(opts.spec.n, opts.spec.phi, opts.spec.mu, opts.spec.sigma, obs_seed);
  const skillver::ForecastSeries fcst = skillver::gen_forecast(
      obs, opts.spec.rho_target, opts.spec.bias, opts.spec.gain, fcst_seed);
  std::vector<skillver::ForecastSeries> members;
  if (opts.ensemble_count >= 2) {
    members = skillver::gen_ensemble(obs, fcst, opts.ensemble_count, ens_seed);
  }

  const auto rho = skillver::pearson_opt(skillver::pair(obs, fcst));
  if (rho && *rho < 0.0) {
    std::cerr << "warning: sample rho is " << shortnum(*rho)
              << "; a negative gain flips the correlation sign\n";
  }

  std::string csv = "time,obs," + fcst.name;
  for (const auto& m : members) csv += ',' + m.name;
  csv += '\n';
  for (std::size_t t = 0; t < obs.size(); ++t) {
    csv += std::to_string(t) + ',' + num(obs.values[t]) + ',' + num(fcst.values[t]);
    for (const auto& m : members) csv += ',' + num(m.values[t]);
    csv += '\n';
  }
  write_output(csv, opts.out);
  return 0;
}

void add_common_flags(CLI::App* sub, CommonOpts& opts, bool with_scheme, bool with_svg) {
  sub->add_option("--input", opts.input, "input CSV path")->required();
  sub->add_option("--obs-col", opts.obs_col, "observation column name (default obs)");
  sub->add_option("--fcst-cols", opts.fcst_cols,
                  "comma-separated forecast columns (default: all non-obs, non-time)")
      ->delimiter(',');
  sub->add_option("--horizon", opts.horizon, "persistence lag in rows (default 1)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--normalize", opts.normalize, "mean | capacity:<value> (default mean)");
  auto* qc = sub->add_option("--qc-min-obs", opts.qc_min_obs,
                             "drop rows with observation below this value");
  sub->add_option("--format", opts.format, "text | json | csv (default text)")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--out", opts.out, "output path (default stdout)");
  if (with_svg) sub->add_option("--svg", opts.svg, "also write an SVG scatter here");
  if (with_scheme) {
    sub->add_option("--scheme", opts.scheme, "mse | mae | variance (default mse)")
        ->check(CLI::IsMember({"mse", "mae", "variance"}));
  }
  sub->parse_complete_callback([qc, &opts] { opts.qc_set = qc->count() > 0; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forecast verification, calibration, and skill scoring toolkit"};
  app.set_version_flag("--version", skillver::kVersion);
  app.require_subcommand(1);

  CommonOpts score_opts, cal_opts, ens_opts;
  SynthOpts synth_opts;

  CLI::App* score = app.add_subcommand("score", "verify forecasts and report skill scores");
  add_common_flags(score, score_opts, false, false);

  CLI::App* calibrate =
      app.add_subcommand("calibrate", "fit a linear calibration and write calibrated columns");
  add_common_flags(calibrate, cal_opts, true, false);

  CLI::App* ensemble =
      app.add_subcommand("ensemble", "score many forecast sets and mark the Pareto front");
  add_common_flags(ensemble, ens_opts, false, true);

  CLI::App* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
  synth->add_option("--n", synth_opts.spec.n, "series length (default 1000)");
  synth->add_option("--phi", synth_opts.spec.phi, "AR(1) coefficient in (-1, 1)");
  synth->add_option("--mu", synth_opts.spec.mu, "stationary mean (default 400)");
  synth->add_option("--sigma", synth_opts.spec.sigma, "stationary stddev (default 120)");
  synth->add_option("--rho-target", synth_opts.spec.rho_target,
                    "forecast/observation correlation in (0, 1] (default 0.8)");
  synth->add_option("--bias", synth_opts.spec.bias, "forecast bias (default 0)");
  synth->add_option("--gain", synth_opts.spec.gain, "forecast gain, nonzero (default 1)");
  synth->add_option("--seed", synth_opts.spec.seed, "PRNG seed (default 1)");
  synth->add_option("--ensemble-count", synth_opts.ensemble_count,
                    "also write this many perturbed members (0 or >= 2)");
  synth->add_option("--out", synth_opts.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
    if (score->parsed()) return run_score(score_opts);
    if (calibrate->parsed()) return run_calibrate(cal_opts);
    if (ensemble->parsed()) return run_ensemble(ens_opts);
    if (synth->parsed()) return run_synth(synth_opts);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const skillver::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const skillver::DegenerateError& e) {
    std::cerr << "degenerate data: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
