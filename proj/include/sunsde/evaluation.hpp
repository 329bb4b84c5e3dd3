#pragma once

#include "sunsde/forecast.hpp"

namespace sunsde {

/// Exceedance-calibration table: for each nominal quantile level q, the
/// observed frequency of Y <= Q(q).
struct CalibrationTable {
  std::vector<double> probs;
  std::vector<double> frequency;
  std::size_t n_counted = 0;
};

struct CalibrationOptions {
  /// Hours with envelope 0 are excluded by default: every model trivially
  /// predicts ~0 there, which would inflate apparent calibration.
  bool exclude_night = true;
};

/// Counts exceedances of density quantiles against aligned observations.
/// observations[i] pairs with forecasts[i]; NaN observations are skipped.
CalibrationTable calibration_table(const std::vector<PredictiveDensity>& forecasts,
                                   const std::vector<double>& observations,
                                   const std::vector<double>& probs,
                                   const CalibrationOptions& opts = {});

/// Rolling-origin quantile forecasts: one filter sweep, then one density
/// propagation per origin in [origin_lo, origin_hi). Origins whose target row
/// leaves the series or whose filter state is unavailable are marked invalid.
struct RollingQuantiles {
  std::vector<double> probs;
  std::vector<std::size_t> origins;
  std::vector<bool> valid;
  std::vector<bool> night;                  // target hour has envelope 0
  std::vector<std::vector<double>> values;  // per origin, per prob
};

struct RollingOptions {
  ForecastOptions forecast;
  int threads = 2;
};

RollingQuantiles rolling_quantiles(const ModelSpec& spec, const ParamVector& p,
                                   const IrradianceSeries& series, std::size_t origin_lo,
                                   std::size_t origin_hi, int horizon_hours,
                                   const std::vector<double>& probs,
                                   const RollingOptions& opts = {});

/// Calibration from precomputed rolling quantiles (memory-friendly form used by
/// the CLI and long evaluations).
CalibrationTable calibration_from_rolling(const RollingQuantiles& rq,
                                          const IrradianceSeries& series, int horizon_hours,
                                          const CalibrationOptions& opts = {});

}  // namespace sunsde
