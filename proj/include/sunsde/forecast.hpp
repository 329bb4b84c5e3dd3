#pragma once

#include "sunsde/ekf.hpp"
#include "sunsde/fokker_planck.hpp"

namespace sunsde {

struct ForecastOptions {
  FilterOptions filter;
  FpOptions fp;
  int n_obs_points = 401;    // observation-space grid resolution
  double noise_tail_sds = 6.0;
};

/// Predictive density in observation space at origin + horizon.
///
/// Night targets (envelope 0) collapse analytically to N(0, sigma_eps^2); the
/// night flag marks them and quantile() then uses the exact Gaussian inverse.
struct PredictiveDensity {
  UtcTime origin_time = 0;
  std::size_t origin_index = 0;
  int horizon_hours = 1;
  bool night = false;
  double sigma_eps = 0.0;
  double obs_scale = 0.0;      // s in y = s*x + noise; pre-noise support is s * state range
  bool a_mean_approx = false;  // latent-rate state reduced to its conditional mean path

  std::vector<double> y;    // observation grid, W/m²
  std::vector<double> pdf;
  std::vector<double> cdf;  // normalized to end at 1

  /// Final state density (original state coordinate), before observation mapping.
  DensityGrid state_density;

  double quantile(double prob) const;
  double cdf_at(double value) const;
  double mean() const;
};

/// Inverse-CDF by monotone interpolation of the cumulative trapezoid.
/// probs must be non-empty and strictly increasing.
std::vector<double> quantiles(const PredictiveDensity& pd, const std::vector<double>& probs);

/// Full pipeline: filter to the origin, propagate the filtered state `horizon`
/// hours through the Fokker-Planck equation with the exogenous inputs along the
/// path, map through the observation equation and convolve with the observation
/// noise. origin + horizon must lie within the series.
PredictiveDensity forecast(const ModelSpec& spec, const ParamVector& p,
                           const IrradianceSeries& series, UtcTime origin, int horizon_hours,
                           const ForecastOptions& opts = {});

PredictiveDensity forecast_at_index(const ModelSpec& spec, const ParamVector& p,
                                    const IrradianceSeries& series, std::size_t origin_index,
                                    int horizon_hours, const ForecastOptions& opts = {});

/// Same, reusing a completed filter sweep (for rolling evaluation).
PredictiveDensity forecast_from_run(const ModelSpec& spec, const ParamVector& p,
                                    const IrradianceSeries& series, const FilterRun& run,
                                    std::size_t origin_index, int horizon_hours,
                                    const ForecastOptions& opts = {});

}  // namespace sunsde
