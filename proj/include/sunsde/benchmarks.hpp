#pragma once

#include <cstddef>
#include <vector>

#include "sunsde/time_series.hpp"

namespace sunsde {

/// Autoregressive benchmark Y_{k+1} = theta1*Y_k + theta2*NWP_{k+1} + noise.
/// The plain ARX has constant noise variance sigma^2; the GLM variant scales the
/// noise standard deviation by Max^{3/4} (variance by Max^{3/2}).
struct ArxParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double sigma = 1.0;
  bool variance_scaled = false;  // true for the ARX-GLM variant
};

/// Envelope floor (W/m²) inside the GLM variance function, so night rows keep a
/// positive variance sigma^2 * eps_v^{3/2} instead of zero.
constexpr double kArxGlmEnvelopeFloor = 1.0;

/// Ordinary least squares over consecutive non-missing observation pairs.
/// Requires at least 100 usable pairs.
ArxParams fit_arx(const IrradianceSeries& series);

/// Weighted least squares with weights 1/max(Max, floor)^{3/2}; sigma by
/// weighted residual moment matching.
ArxParams fit_arx_glm(const IrradianceSeries& series);

/// Gaussian log-likelihood of the series under the benchmark (sum over usable
/// consecutive pairs).
double arx_loglik(const ArxParams& params, const IrradianceSeries& series);

/// Number of consecutive non-missing pairs the ARX likelihood runs over.
std::size_t arx_pair_count(const IrradianceSeries& series);

enum class ClimatologyMode { Unconditional, ByHour, ByHourMonth };

/// Empirical-likelihood benchmark: per-bucket histograms with fixed-width bins,
/// smoothed by one pseudo-observation per bucket so the test-set likelihood is
/// always finite.
struct ClimatologyTable {
  ClimatologyMode mode = ClimatologyMode::Unconditional;
  double bin_width = 20.0;  // W/m²
  std::size_t n_bins = 0;
  // counts[bucket][bin]; bucket index is 0, hour, or hour*12+month-1
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> totals;  // observations per bucket

  std::size_t bucket_of(UtcTime t) const;
  /// Smoothed density at value y for the bucket of t.
  double density(UtcTime t, double y) const;
};

ClimatologyTable fit_climatology(const IrradianceSeries& series, ClimatologyMode mode);
double climatology_loglik(const ClimatologyTable& table, const IrradianceSeries& series);

/// Biased sample autocorrelation with the +-2/sqrt(N) significance band.
struct AcfResult {
  std::vector<double> acf;  // lags 0..max_lag
  double band = 0.0;
};

AcfResult residual_acf(const std::vector<double>& residuals, std::size_t max_lag);

}  // namespace sunsde
