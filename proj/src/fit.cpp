#include "sunsde/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "sunsde/errors.hpp"

namespace sunsde {

InformationCriteria information_criteria(double log_lik, std::size_t n_params,
                                         std::size_t n_obs) {
  if (n_obs < 1) throw ArgumentError("information_criteria: n_obs must be >= 1");
  InformationCriteria ic;
  ic.aic = 2.0 * static_cast<double>(n_params) - 2.0 * log_lik;
  ic.bic = static_cast<double>(n_params) * std::log(static_cast<double>(n_obs)) -
           2.0 * log_lik;
  return ic;
}

FitReport fit(const ModelSpec& spec, const IrradianceSeries& series,
              const ParamVector& p_init, const FitOptions& opts) {
  validate_params(p_init, spec.id);

  const Objective objective = [&](const std::vector<double>& u) -> double {
    try {
      const ParamVector p = constrain(u, spec.id);
      return filter_pass(spec, p, series, opts.filter).neg_log_lik;
    } catch (const NumericalError&) {
      return std::numeric_limits<double>::infinity();
    } catch (const ArgumentError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const std::vector<double> u0 = unconstrain(p_init, spec.id);
  const OptimResult simplex = nelder_mead(objective, u0, opts.simplex);
  const OptimResult polished = bfgs_polish(objective, simplex.x, opts.polish);
  const bool improved = polished.f <= simplex.f;
  const OptimResult& best = improved ? polished : simplex;

  FitReport report;
  report.model_id = spec.id;
  report.params = constrain(best.x, spec.id);
  report.iterations = simplex.iterations + polished.iterations;
  report.evaluations = simplex.evaluations + polished.evaluations;
  report.converged = polished.converged || (simplex.converged && !improved);

  const FilterRun run = filter_pass(spec, report.params, series, opts.filter);
  report.log_lik = -run.neg_log_lik;
  report.n_obs = run.n_obs;
  report.n_params = spec.n_params();
  const InformationCriteria ic = information_criteria(report.log_lik, report.n_params,
                                                      report.n_obs);
  report.aic = ic.aic;
  report.bic = ic.bic;
  return report;
}

ParamVector default_init(ModelId id, const IrradianceSeries& series) {
  ParamVector p;
  p.theta = 1.0;
  p.mu = 1.0;
  p.beta = 0.005;
  p.gamma = 0.85;
  p.theta_a = 0.3;
  p.mu_a = 0.3;
  p.sigma_a = 0.3;
  p.omega1 = 0.05;
  p.omega2 = 0.0;

  // Scale-dependent starts from the data: M1 lives on the raw W/m² scale, the
  // bounded models on the transmittance scale.
  double sum = 0.0, sum2 = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.missing[i] || series.max_irradiance[i] <= 0.0) continue;
    const double d = series.irradiance[i];
    sum += d;
    sum2 += d * d;
    ++n;
  }
  const double sd = n > 1 ? std::sqrt(std::max(1.0, sum2 / n - (sum / n) * (sum / n))) : 100.0;
  if (id == ModelId::M1) {
    p.theta = 0.5;
    p.sigma_x = std::max(10.0, 0.5 * sd);
    p.sigma_eps = std::max(5.0, 0.1 * sd);
  } else {
    p.theta = 1.0;
    p.sigma_x = 1.0;
    p.sigma_eps = std::max(5.0, 0.05 * sd);
  }
  return p;
}

std::string to_json(const FitReport& report) {
  nlohmann::json j;
  j["model_id"] = to_string(report.model_id);
  for (ParamId pid : schema(report.model_id)) {
    j[name(pid)] = report.params.get(pid);
  }
  j["delta"] = ParamVector::delta;
  j["log_lik"] = report.log_lik;
  j["aic"] = report.aic;
  j["bic"] = report.bic;
  j["n_obs"] = report.n_obs;
  j["n_params"] = report.n_params;
  j["converged"] = report.converged;
  j["iterations"] = report.iterations;
  j["evaluations"] = report.evaluations;
  return j.dump(2) + "\n";
}

FitReport fit_report_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid fit report JSON: ") + e.what());
  }
  FitReport report;
  try {
    report.model_id = model_id_from_string(j.at("model_id").get<std::string>());
    for (ParamId pid : schema(report.model_id)) {
      report.params.set(pid, j.at(name(pid)).get<double>());
    }
    report.log_lik = j.value("log_lik", 0.0);
    report.aic = j.value("aic", 0.0);
    report.bic = j.value("bic", 0.0);
    report.n_obs = j.value("n_obs", std::size_t{0});
    report.n_params = j.value("n_params", schema(report.model_id).size());
    report.converged = j.value("converged", false);
    report.iterations = j.value("iterations", 0);
    report.evaluations = j.value("evaluations", 0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fit report JSON missing field: ") + e.what());
  }
  validate_params(report.params, report.model_id);
  return report;
}

}  // namespace sunsde
