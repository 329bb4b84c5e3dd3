// sunsde: probabilistic solar-irradiance forecasting with SDE state-space models.
//
// Subcommands: simulate, fit, forecast, evaluate, benchmark. Every command is
// reproducible: the same config and seed produce identical output files. See
// FORMATS.md for the emitted CSV schemas.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sunsde/benchmarks.hpp"
#include "sunsde/errors.hpp"
#include "sunsde/evaluation.hpp"
#include "sunsde/fit.hpp"
#include "sunsde/forecast.hpp"
#include "sunsde/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sunsde;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string model = "M4";
  std::string data_path;
  std::string fit_path;
  std::string out_dir = "out";
  double lat = 56.0;
  double lon = 9.0;
  std::string train_end;           // ISO-8601 boundary
  std::vector<int> horizons{1, 24};
  std::uint64_t seed = 1;
  // simulate
  std::string start = "2009-01-01T00:00:00Z";
  double years = 3.0;
  json params;  // true parameters for simulate / initial values for fit
  // forecast
  std::string origin;
  std::string band_start;
  std::string band_end;
  // benchmark
  std::vector<std::string> models;
  // evaluate
  bool include_night = false;
  // optimizer and density-grid options
  int max_iterations = 3000;
  int fp_points = 400;
  double fp_dt = 0.05;
};

json load_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("missing ") + what + ": " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  const json j = load_json_file(path, "config file");
  if (j.contains("model")) cfg.model = j["model"].get<std::string>();
  if (j.contains("data")) cfg.data_path = j["data"].get<std::string>();
  if (j.contains("fit")) cfg.fit_path = j["fit"].get<std::string>();
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("site")) {
    cfg.lat = j["site"].value("lat", cfg.lat);
    cfg.lon = j["site"].value("lon", cfg.lon);
  }
  if (j.contains("train_end")) cfg.train_end = j["train_end"].get<std::string>();
  if (j.contains("horizons")) cfg.horizons = j["horizons"].get<std::vector<int>>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("start")) cfg.start = j["start"].get<std::string>();
  if (j.contains("years")) cfg.years = j["years"].get<double>();
  if (j.contains("params")) cfg.params = j["params"];
  if (j.contains("origin")) cfg.origin = j["origin"].get<std::string>();
  if (j.contains("band_start")) cfg.band_start = j["band_start"].get<std::string>();
  if (j.contains("band_end")) cfg.band_end = j["band_end"].get<std::string>();
  if (j.contains("models")) cfg.models = j["models"].get<std::vector<std::string>>();
  if (j.contains("max_iterations")) cfg.max_iterations = j["max_iterations"].get<int>();
  if (j.contains("fp_points")) cfg.fp_points = j["fp_points"].get<int>();
  if (j.contains("fp_dt")) cfg.fp_dt = j["fp_dt"].get<double>();
}

ParamVector params_from_json(const json& j, ModelId id) {
  ParamVector p;
  for (ParamId pid : schema(id)) {
    if (!j.contains(name(pid))) {
      throw ConfigError(std::string("params missing '") + name(pid) + "' for model " +
                        to_string(id));
    }
    p.set(pid, j[name(pid)].get<double>());
  }
  validate_params(p, id);
  return p;
}

IrradianceSeries load_data(const RunConfig& cfg) {
  if (cfg.data_path.empty()) throw ConfigError("no data file given (--data)");
  if (!fs::exists(cfg.data_path)) throw ConfigError("missing data file: " + cfg.data_path);
  LoadReport rep;
  const IrradianceSeries s = load_csv(cfg.data_path, SiteGeometry{cfg.lat, cfg.lon}, &rep);
  if (rep.masked_rows > 0) {
    std::cerr << "warning: " << rep.masked_rows << " rows masked missing during validation\n";
  }
  return s;
}

FitReport load_fit(const RunConfig& cfg) {
  if (cfg.fit_path.empty()) throw ConfigError("no fit report given (--fit)");
  if (!fs::exists(cfg.fit_path)) {
    throw ConfigError("missing fit report: " + cfg.fit_path + " (run `sunsde fit` first)");
  }
  std::ifstream in(cfg.fit_path);
  std::stringstream buf;
  buf << in.rdbuf();
  return fit_report_from_json(buf.str());
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

FitOptions fit_options(const RunConfig& cfg) {
  FitOptions opts;
  opts.simplex.max_iterations = cfg.max_iterations;
  return opts;
}

ForecastOptions forecast_options(const RunConfig& cfg) {
  ForecastOptions opts;
  opts.fp.n_points = cfg.fp_points;
  opts.fp.dt_hours = cfg.fp_dt;
  return opts;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const RunConfig& cfg) {
  const ModelId id = model_id_from_string(cfg.model);
  const ModelSpec spec = make_model(id);
  ParamVector p;
  if (!cfg.params.is_null()) {
    p = params_from_json(cfg.params, id);
  } else {
    p.theta = 1.0;
    p.mu = 0.9;
    p.beta = 0.008;
    p.gamma = 0.82;
    p.sigma_x = 0.5;
    p.sigma_eps = 10.0;
    p.theta_a = 0.3;
    p.mu_a = 0.3;
    p.sigma_a = 0.25;
    p.omega1 = 0.1;
    p.omega2 = 0.5;
    if (id == ModelId::M1) {
      p.theta = 0.5;
      p.mu = 1.0;
      p.sigma_x = 30.0;
    }
  }

  const UtcTime start = parse_iso8601(cfg.start);
  const auto n_hours = static_cast<std::size_t>(std::llround(cfg.years * 365.25 * 24.0));
  SyntheticOptions so;
  so.night = NightHandling::ClampZero;
  const IrradianceSeries s = make_synthetic_series(spec, p, SiteGeometry{cfg.lat, cfg.lon},
                                                   start, n_hours, cfg.seed, so);

  const fs::path out = cfg.data_path.empty()
                           ? fs::path(cfg.out_dir) / (to_string(id) + "_synthetic.csv")
                           : fs::path(cfg.data_path);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_csv(s, out.string());
  std::cout << "simulate: model " << to_string(id) << ", " << s.size() << " rows, seed "
            << cfg.seed << " -> " << out.string() << "\n";
  return kExitOk;
}

int cmd_fit(const RunConfig& cfg) {
  const ModelId id = model_id_from_string(cfg.model);
  const ModelSpec spec = make_model(id);
  const IrradianceSeries series = load_data(cfg);
  IrradianceSeries train = series;
  if (!cfg.train_end.empty()) {
    train = split_train_test(series, parse_iso8601(cfg.train_end)).first;
  }

  ParamVector init = default_init(id, train);
  if (!cfg.params.is_null()) init = params_from_json(cfg.params, id);

  const FitReport report = fit(spec, train, init, fit_options(cfg));
  const fs::path out = fs::path(cfg.out_dir) / "fit" / (to_string(id) + "_fit.json");
  open_out(out) << to_json(report);

  std::cout << "fit: model " << to_string(id) << " on " << report.n_obs << " observations\n"
            << "  log_lik " << fmt(report.log_lik) << "  aic " << fmt(report.aic) << "  bic "
            << fmt(report.bic) << "\n  converged " << (report.converged ? "yes" : "no")
            << " after " << report.iterations << " iterations (" << report.evaluations
            << " evaluations)\n";
  for (ParamId pid : schema(id)) {
    std::cout << "  " << name(pid) << " = " << fmt(report.params.get(pid)) << "\n";
  }
  std::cout << "  -> " << out.string() << "\n";
  return kExitOk;
}

int cmd_forecast(const RunConfig& cfg) {
  const FitReport rep = load_fit(cfg);
  const ModelSpec spec = make_model(rep.model_id);
  const IrradianceSeries series = load_data(cfg);
  const std::string tag = to_string(rep.model_id);
  const fs::path dir = fs::path(cfg.out_dir) / "forecast";
  if (cfg.horizons.empty()) throw ConfigError("no horizons given");

  const int max_h = *std::max_element(cfg.horizons.begin(), cfg.horizons.end());
  if (series.size() <= static_cast<std::size_t>(max_h) + 1) {
    throw ConfigError("series too short for the requested horizon");
  }
  const UtcTime origin =
      cfg.origin.empty()
          ? series.timestamps[series.size() - 1 - static_cast<std::size_t>(max_h)]
          : parse_iso8601(cfg.origin);

  for (int h : cfg.horizons) {
    const PredictiveDensity pd = forecast(spec, rep.params, series, origin, h,
                                          forecast_options(cfg));

    auto qf = open_out(dir / (tag + "_h" + std::to_string(h) + "_quantiles.csv"));
    qf << "horizon_h,prob,value_wm2\n";
    for (int q = 1; q <= 19; ++q) {
      const double prob = q / 20.0;
      qf << h << ',' << fmt(prob) << ',' << fmt(pd.quantile(prob)) << '\n';
    }

    auto df = open_out(dir / (tag + "_h" + std::to_string(h) + "_density.csv"));
    df << "x,density\n";
    for (std::size_t i = 0; i < pd.y.size(); ++i) {
      df << fmt(pd.y[i]) << ',' << fmt(pd.pdf[i]) << '\n';
    }
    std::cout << "forecast: origin " << format_iso8601(origin) << " +" << h << "h  q50 "
              << fmt(pd.quantile(0.5)) << " W/m2  [q05 " << fmt(pd.quantile(0.05)) << ", q95 "
              << fmt(pd.quantile(0.95)) << "]" << (pd.night ? "  (night)" : "") << "\n";
  }

  // rolling prediction-band export for plotting
  if (!cfg.band_start.empty() || !cfg.band_end.empty()) {
    if (cfg.band_start.empty() || cfg.band_end.empty()) {
      throw ConfigError("band export needs both --band-start and --band-end");
    }
    const UtcTime b0 = parse_iso8601(cfg.band_start);
    const UtcTime b1 = parse_iso8601(cfg.band_end);
    const auto lo = static_cast<std::size_t>(
        std::lower_bound(series.timestamps.begin(), series.timestamps.end(), b0) -
        series.timestamps.begin());
    const auto hi = static_cast<std::size_t>(
        std::lower_bound(series.timestamps.begin(), series.timestamps.end(), b1) -
        series.timestamps.begin());
    if (lo >= hi) throw ConfigError("empty band window");
    const std::vector<double> probs{0.05, 0.5, 0.95};
    for (int h : cfg.horizons) {
      if (hi + static_cast<std::size_t>(h) > series.size()) {
        throw ConfigError("band window + horizon extends past the series end");
      }
      RollingOptions ropts;
      ropts.forecast = forecast_options(cfg);
      const RollingQuantiles rq =
          rolling_quantiles(spec, rep.params, series, lo, hi, h, probs, ropts);
      const fs::path band_path = dir / (tag + "_band_h" + std::to_string(h) + ".csv");
      auto bf = open_out(band_path);
      bf << "timestamp,q05,q50,q95,observation\n";
      for (std::size_t i = 0; i < rq.origins.size(); ++i) {
        if (!rq.valid[i]) continue;
        const std::size_t target = rq.origins[i] + static_cast<std::size_t>(h);
        bf << format_iso8601(series.timestamps[target]) << ',' << fmt(rq.values[i][0]) << ','
           << fmt(rq.values[i][1]) << ',' << fmt(rq.values[i][2]) << ',';
        if (!series.missing[target]) bf << fmt(series.irradiance[target]);
        bf << '\n';
      }
      std::cout << "forecast: band of " << (hi - lo) << " origins at +" << h << "h -> "
                << band_path.string() << "\n";
    }
  }
  return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg) {
  const FitReport rep = load_fit(cfg);
  const ModelSpec spec = make_model(rep.model_id);
  const IrradianceSeries series = load_data(cfg);
  const std::string tag = to_string(rep.model_id);

  std::vector<std::pair<std::string, const IrradianceSeries*>> periods;
  IrradianceSeries train, test;
  if (!cfg.train_end.empty()) {
    std::tie(train, test) = split_train_test(series, parse_iso8601(cfg.train_end));
    periods = {{"train", &train}, {"test", &test}};
  } else {
    periods = {{"all", &series}};
  }

  const std::vector<double> probs{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::vector<double>> columns;  // one per (period, horizon)
  std::vector<std::string> column_names;

  const fs::path dir = fs::path(cfg.out_dir) / "eval";
  json summary;
  summary["model_id"] = tag;
  for (const auto& [label, part] : periods) {
    const FilterRun run = filter_pass(spec, rep.params, *part);
    const InformationCriteria ic =
        information_criteria(-run.neg_log_lik, spec.n_params(), run.n_obs);
    summary[label]["log_lik"] = -run.neg_log_lik;
    summary[label]["n_obs"] = run.n_obs;
    summary[label]["aic"] = ic.aic;
    summary[label]["bic"] = ic.bic;
    std::cout << "evaluate: " << label << " log_lik " << fmt(-run.neg_log_lik) << " on "
              << run.n_obs << " observations\n";

    // studentized residuals and their autocorrelation, plot-ready
    {
      auto rf = open_out(dir / (tag + "_" + label + "_residuals.csv"));
      rf << "timestamp,std_residual\n";
      for (std::size_t i = 0; i < run.innovations.size(); ++i) {
        rf << format_iso8601(part->timestamps[run.innovations[i].index]) << ','
           << fmt(run.std_residuals[i]) << '\n';
      }
      const std::size_t max_lag = std::min<std::size_t>(40, run.std_residuals.size() / 4);
      const AcfResult acf = residual_acf(run.std_residuals, max_lag);
      auto af = open_out(dir / (tag + "_" + label + "_residual_acf.csv"));
      af << "lag,acf,band\n";
      for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        af << lag << ',' << fmt(acf.acf[lag]) << ',' << fmt(acf.band) << '\n';
      }
    }

    for (int h : cfg.horizons) {
      if (part->size() <= static_cast<std::size_t>(h) + 1) {
        throw ConfigError("period too short for horizon " + std::to_string(h));
      }
      RollingOptions ropts;
      ropts.forecast = forecast_options(cfg);
      const RollingQuantiles rq =
          rolling_quantiles(spec, rep.params, *part, 0,
                            part->size() - static_cast<std::size_t>(h), h, probs, ropts);
      CalibrationOptions copts;
      copts.exclude_night = !cfg.include_night;
      const CalibrationTable table = calibration_from_rolling(rq, *part, h, copts);
      columns.push_back(table.frequency);
      column_names.push_back(label + "_h" + std::to_string(h));
      summary[label]["calibration_h" + std::to_string(h)] = table.frequency;
      summary[label]["calibration_n_h" + std::to_string(h)] = table.n_counted;
      std::cout << "  " << label << " +" << h << "h exceedance:";
      for (std::size_t q = 0; q < probs.size(); ++q) {
        std::cout << ' ' << fmt(table.frequency[q]);
      }
      std::cout << " (" << table.n_counted << " counted)\n";
    }
  }

  auto cf = open_out(dir / (tag + "_calibration.csv"));
  cf << "quantile";
  for (const auto& cname : column_names) cf << ',' << cname;
  cf << '\n';
  for (std::size_t q = 0; q < probs.size(); ++q) {
    cf << fmt(probs[q]);
    for (const auto& col : columns) cf << ',' << fmt(col[q]);
    cf << '\n';
  }
  open_out(dir / (tag + "_summary.json")) << summary.dump(2) << "\n";
  std::cout << "  -> " << (dir / (tag + "_calibration.csv")).string() << "\n";
  return kExitOk;
}

int cmd_benchmark(const RunConfig& cfg) {
  const IrradianceSeries series = load_data(cfg);
  if (cfg.train_end.empty()) throw ConfigError("benchmark needs --train-end");
  const auto [train, test] = split_train_test(series, parse_iso8601(cfg.train_end));

  struct Row {
    std::string name;
    std::string df = "-";
    double train_ll = 0.0;
    std::string aic = "-";
    std::string bic = "-";
    double test_ll = 0.0;
  };
  std::vector<Row> rows;

  const auto clim = [&](const char* label, ClimatologyMode mode) {
    try {
      const ClimatologyTable t = fit_climatology(train, mode);
      rows.push_back(
          {label, "-", climatology_loglik(t, train), "-", "-", climatology_loglik(t, test)});
    } catch (const ArgumentError& e) {
      std::cerr << "warning: skipping " << label << ": " << e.what() << "\n";
    }
  };
  clim("Clim.1", ClimatologyMode::Unconditional);
  clim("Clim.2", ClimatologyMode::ByHour);
  clim("Clim.3", ClimatologyMode::ByHourMonth);

  {
    const ArxParams arx = fit_arx(train);
    rows.push_back({"ARX", "-", arx_loglik(arx, train), "-", "-", arx_loglik(arx, test)});
    const ArxParams glm = fit_arx_glm(train);
    rows.push_back({"ARX-GLM", "-", arx_loglik(glm, train), "-", "-", arx_loglik(glm, test)});
  }

  std::vector<std::string> model_list = cfg.models;
  if (model_list.empty()) model_list = {"M1", "M2", "M3", "M4", "M5", "M6", "M7"};
  for (const std::string& mname : model_list) {
    const ModelId id = model_id_from_string(mname);
    const ModelSpec spec = make_model(id);
    const FitReport rep = fit(spec, train, default_init(id, train), fit_options(cfg));
    open_out(fs::path(cfg.out_dir) / "fit" / (mname + "_fit.json")) << to_json(rep);
    const FilterRun test_run = filter_pass(spec, rep.params, test);
    rows.push_back({mname, std::to_string(rep.n_params), rep.log_lik, fmt(rep.aic),
                    fmt(rep.bic), -test_run.neg_log_lik});
    std::cout << "benchmark: fitted " << mname << (rep.converged ? "" : " (not converged)")
              << ", train LL " << fmt(rep.log_lik) << ", test LL "
              << fmt(-test_run.neg_log_lik) << "\n";
  }

  const fs::path out = fs::path(cfg.out_dir) / "benchmark" / "comparison.csv";
  auto bf = open_out(out);
  bf << "model,df,train_ll,aic,bic,test_ll\n";
  for (const Row& r : rows) {
    bf << r.name << ',' << r.df << ',' << fmt(r.train_ll) << ',' << r.aic << ',' << r.bic
       << ',' << fmt(r.test_ll) << '\n';
  }

  std::cout << "\n  model     df  train LL      AIC          BIC          test LL\n";
  for (const Row& r : rows) {
    std::printf("  %-9s %-3s %-13.6g %-12s %-12s %-13.6g\n", r.name.c_str(), r.df.c_str(),
                r.train_ll, r.aic.c_str(), r.bic.c_str(), r.test_ll);
  }

  std::vector<const Row*> ranking;
  for (const Row& r : rows) ranking.push_back(&r);
  std::sort(ranking.begin(), ranking.end(),
            [](const Row* a, const Row* b) { return a->test_ll > b->test_ll; });
  std::cout << "\n  ranked by test LL:";
  for (const Row* r : ranking) std::cout << ' ' << r->name;
  std::cout << "\n  -> " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic solar-irradiance forecasting with SDE state-space models"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flags override it)");
    sub->add_option("--model", cfg.model, "model id, M1..M7");
    sub->add_option("--data", cfg.data_path, "dataset CSV path");
    sub->add_option("--out-dir", cfg.out_dir, "output directory");
    sub->add_option("--lat", cfg.lat, "site latitude, degrees");
    sub->add_option("--lon", cfg.lon, "site longitude, degrees east");
    sub->add_option("--train-end", cfg.train_end, "train/test boundary (ISO-8601 Z)");
    sub->add_option("--horizon", cfg.horizons, "forecast horizons in hours");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--max-iterations", cfg.max_iterations, "simplex iteration budget");
    sub->add_option("--fp-points", cfg.fp_points, "density grid points");
    sub->add_option("--fp-dt", cfg.fp_dt, "density solver step, hours");
  };

  CLI::App* sim = app.add_subcommand("simulate", "generate a synthetic dataset CSV");
  add_common(sim);
  sim->add_option("--start", cfg.start, "first timestamp (ISO-8601 Z)");
  sim->add_option("--years", cfg.years, "length in years");

  CLI::App* fitc = app.add_subcommand("fit", "maximum-likelihood fit on the training set");
  add_common(fitc);

  CLI::App* fc = app.add_subcommand("forecast", "predictive densities and quantiles");
  add_common(fc);
  fc->add_option("--fit", cfg.fit_path, "fit report JSON from `sunsde fit`");
  fc->add_option("--origin", cfg.origin, "forecast origin (ISO-8601 Z)");
  fc->add_option("--band-start", cfg.band_start, "rolling band window start");
  fc->add_option("--band-end", cfg.band_end, "rolling band window end");

  CLI::App* ev = app.add_subcommand("evaluate", "likelihood and calibration tables");
  add_common(ev);
  ev->add_option("--fit", cfg.fit_path, "fit report JSON from `sunsde fit`");
  ev->add_flag("--include-night", cfg.include_night,
               "count envelope-zero target hours in the calibration table");

  CLI::App* bm = app.add_subcommand("benchmark", "compare SDE models with the benchmarks");
  add_common(bm);
  bm->add_option("--models", cfg.models, "SDE models to fit (default: all of M1..M7)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      apply_config_file(cfg, config_path);
      // reparse so explicit flags win over the config file
      try {
        app.clear();
        app.parse(argc, argv);
      } catch (const CLI::ParseError&) {
      }
    }
    if (sim->parsed()) return cmd_simulate(cfg);
    if (fitc->parsed()) return cmd_fit(cfg);
    if (fc->parsed()) return cmd_forecast(cfg);
    if (ev->parsed()) return cmd_evaluate(cfg);
    if (bm->parsed()) return cmd_benchmark(cfg);
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
