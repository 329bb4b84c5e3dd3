#include "sunsde/benchmarks.hpp"

#include <algorithm>
#include <cmath>

#include "sunsde/errors.hpp"
#include "sunsde/stats.hpp"

namespace sunsde {

namespace {

constexpr double kLogTwoPi = 1.83787706640934548356;

double glm_weight(double max_irradiance) {
  return 1.0 / std::pow(std::max(max_irradiance, kArxGlmEnvelopeFloor), 1.5);
}

template <typename PairFn>
void for_each_pair(const IrradianceSeries& s, PairFn&& fn) {
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    if (s.missing[k] || s.missing[k + 1]) continue;
    fn(k);
  }
}

ArxParams solve_weighted(const IrradianceSeries& s, bool scaled) {
  // normal equations for y = theta1*y_prev + theta2*nwp with per-row weights
  double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
  std::size_t n = 0;
  for_each_pair(s, [&](std::size_t k) {
    const double w = scaled ? glm_weight(s.max_irradiance[k + 1]) : 1.0;
    const double yp = s.irradiance[k];
    const double u = s.nwp[k + 1];
    const double y = s.irradiance[k + 1];
    a11 += w * yp * yp;
    a12 += w * yp * u;
    a22 += w * u * u;
    b1 += w * yp * y;
    b2 += w * u * y;
    ++n;
  });
  if (n < 100) {
    throw ArgumentError("ARX fit needs at least 100 consecutive observation pairs, got " +
                        std::to_string(n));
  }
  const double det = a11 * a22 - a12 * a12;
  if (std::fabs(det) < 1e-12 * std::max(1.0, a11 * a22)) {
    throw NumericalError("ARX normal equations are singular");
  }
  ArxParams p;
  p.variance_scaled = scaled;
  p.theta1 = (b1 * a22 - b2 * a12) / det;
  p.theta2 = (a11 * b2 - a12 * b1) / det;

  double wrss = 0.0;
  for_each_pair(s, [&](std::size_t k) {
    const double w = scaled ? glm_weight(s.max_irradiance[k + 1]) : 1.0;
    const double r = s.irradiance[k + 1] - p.theta1 * s.irradiance[k] - p.theta2 * s.nwp[k + 1];
    wrss += w * r * r;
  });
  p.sigma = std::sqrt(wrss / static_cast<double>(n));
  return p;
}

}  // namespace

ArxParams fit_arx(const IrradianceSeries& series) { return solve_weighted(series, false); }

ArxParams fit_arx_glm(const IrradianceSeries& series) { return solve_weighted(series, true); }

std::size_t arx_pair_count(const IrradianceSeries& series) {
  std::size_t n = 0;
  for_each_pair(series, [&](std::size_t) { ++n; });
  return n;
}

double arx_loglik(const ArxParams& params, const IrradianceSeries& series) {
  double ll = 0.0;
  for_each_pair(series, [&](std::size_t k) {
    const double mean =
        params.theta1 * series.irradiance[k] + params.theta2 * series.nwp[k + 1];
    double var = params.sigma * params.sigma;
    if (params.variance_scaled) {
      var *= std::pow(std::max(series.max_irradiance[k + 1], kArxGlmEnvelopeFloor), 1.5);
    }
    const double r = series.irradiance[k + 1] - mean;
    ll -= 0.5 * (kLogTwoPi + std::log(var) + r * r / var);
  });
  return ll;
}

std::size_t ClimatologyTable::bucket_of(UtcTime t) const {
  const CivilDateTime c = civil_from_time(t);
  switch (mode) {
    case ClimatologyMode::Unconditional: return 0;
    case ClimatologyMode::ByHour: return static_cast<std::size_t>(c.hour);
    case ClimatologyMode::ByHourMonth:
      return static_cast<std::size_t>(c.hour) * 12u + static_cast<std::size_t>(c.month - 1);
  }
  return 0;
}

double ClimatologyTable::density(UtcTime t, double y) const {
  const std::size_t b = bucket_of(t);
  const auto bin = static_cast<std::size_t>(
      std::clamp(std::floor(y / bin_width), 0.0, static_cast<double>(n_bins - 1)));
  // one pseudo-observation per bucket, spread uniformly over its bins, keeps
  // test-set likelihoods finite without washing out sparse buckets
  const double smoothed =
      static_cast<double>(counts[b][bin]) + 1.0 / static_cast<double>(n_bins);
  const double total = static_cast<double>(totals[b]) + 1.0;
  return smoothed / (total * bin_width);
}

ClimatologyTable fit_climatology(const IrradianceSeries& series, ClimatologyMode mode) {
  ClimatologyTable t;
  t.mode = mode;
  if (mode == ClimatologyMode::ByHourMonth) {
    // need every (hour, month) bucket populated
    const UtcTime span = series.empty()
                             ? 0
                             : series.timestamps.back() - series.timestamps.front();
    if (span < 365LL * 86400 - kSecondsPerHour) {
      throw ArgumentError("hour-by-month climatology needs at least one full year of data");
    }
  }

  double max_obs = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!series.missing[i]) max_obs = std::max(max_obs, series.irradiance[i]);
  }
  t.n_bins = static_cast<std::size_t>(std::floor(max_obs / t.bin_width)) + 1;

  const std::size_t n_buckets =
      mode == ClimatologyMode::Unconditional ? 1 : (mode == ClimatologyMode::ByHour ? 24 : 288);
  t.counts.assign(n_buckets, std::vector<std::size_t>(t.n_bins, 0));
  t.totals.assign(n_buckets, 0);

  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.missing[i]) continue;
    const std::size_t b = t.bucket_of(series.timestamps[i]);
    const auto bin = static_cast<std::size_t>(std::clamp(
        std::floor(series.irradiance[i] / t.bin_width), 0.0,
        static_cast<double>(t.n_bins - 1)));
    ++t.counts[b][bin];
    ++t.totals[b];
  }
  return t;
}

double climatology_loglik(const ClimatologyTable& table, const IrradianceSeries& series) {
  double ll = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.missing[i]) continue;
    ll += std::log(table.density(series.timestamps[i], series.irradiance[i]));
  }
  return ll;
}

AcfResult residual_acf(const std::vector<double>& residuals, std::size_t max_lag) {
  const std::size_t n = residuals.size();
  if (n <= max_lag) throw ArgumentError("residual_acf: need more samples than lags");
  double mean = 0.0;
  for (double r : residuals) mean += r;
  mean /= static_cast<double>(n);

  double c0 = 0.0;
  for (double r : residuals) c0 += (r - mean) * (r - mean);

  AcfResult out;
  out.acf.resize(max_lag + 1);
  out.band = 2.0 / std::sqrt(static_cast<double>(n));
  out.acf[0] = 1.0;
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    double c = 0.0;
    for (std::size_t k = lag; k < n; ++k) {
      c += (residuals[k] - mean) * (residuals[k - lag] - mean);
    }
    out.acf[lag] = c / c0;
  }
  return out;
}

}  // namespace sunsde
