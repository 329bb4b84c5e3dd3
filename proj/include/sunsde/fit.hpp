#pragma once

#include <string>

#include "sunsde/ekf.hpp"
#include "sunsde/optim.hpp"

namespace sunsde {

struct InformationCriteria {
  double aic = 0.0;
  double bic = 0.0;
};

/// aic = 2k - 2*log_lik; bic = k*ln(n_obs) - 2*log_lik.
InformationCriteria information_criteria(double log_lik, std::size_t n_params,
                                         std::size_t n_obs);

struct FitOptions {
  FilterOptions filter;
  NelderMeadOptions simplex;
  BfgsOptions polish;
  FitOptions() {
    simplex.max_iterations = 3000;
    polish.threads = 2;
  }
};

struct FitReport {
  ModelId model_id = ModelId::M1;
  ParamVector params;
  double log_lik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  std::size_t n_obs = 0;
  std::size_t n_params = 0;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
};

/// Maximum-likelihood estimation: simplex search over the unconstrained parameter
/// space followed by a quasi-Newton polish. Non-convergence yields
/// converged=false, never an exception.
FitReport fit(const ModelSpec& spec, const IrradianceSeries& series,
              const ParamVector& p_init, const FitOptions& opts = {});

/// Generic starting values for fitting real or synthetic data.
ParamVector default_init(ModelId id, const IrradianceSeries& series);

/// Flat key-value JSON (parameter names, model_id, LL/AIC/BIC, diagnostics).
std::string to_json(const FitReport& report);
FitReport fit_report_from_json(const std::string& json_text);

}  // namespace sunsde
