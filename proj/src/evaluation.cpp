#include "sunsde/evaluation.hpp"

#include <cmath>
#include <thread>

#include "sunsde/errors.hpp"

namespace sunsde {

namespace {

void check_probs(const std::vector<double>& probs) {
  if (probs.empty()) throw ArgumentError("calibration: empty probability list");
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] > 0.0 && probs[i] < 1.0)) {
      throw ArgumentError("calibration: probabilities must lie in (0,1)");
    }
    if (i > 0 && !(probs[i] > probs[i - 1])) {
      throw ArgumentError("calibration: probabilities must be strictly increasing");
    }
  }
}

}  // namespace

CalibrationTable calibration_table(const std::vector<PredictiveDensity>& forecasts,
                                   const std::vector<double>& observations,
                                   const std::vector<double>& probs,
                                   const CalibrationOptions& opts) {
  check_probs(probs);
  if (forecasts.size() != observations.size()) {
    throw ArgumentError("calibration: forecasts and observations are not aligned");
  }
  CalibrationTable table;
  table.probs = probs;
  table.frequency.assign(probs.size(), 0.0);
  for (std::size_t i = 0; i < forecasts.size(); ++i) {
    if (std::isnan(observations[i])) continue;
    if (opts.exclude_night && forecasts[i].night) continue;
    for (std::size_t q = 0; q < probs.size(); ++q) {
      if (observations[i] <= forecasts[i].quantile(probs[q])) table.frequency[q] += 1.0;
    }
    ++table.n_counted;
  }
  if (table.n_counted == 0) throw ArgumentError("calibration: no usable forecast pairs");
  for (double& f : table.frequency) f /= static_cast<double>(table.n_counted);
  return table;
}

RollingQuantiles rolling_quantiles(const ModelSpec& spec, const ParamVector& p,
                                   const IrradianceSeries& series, std::size_t origin_lo,
                                   std::size_t origin_hi, int horizon_hours,
                                   const std::vector<double>& probs,
                                   const RollingOptions& opts) {
  check_probs(probs);
  if (origin_hi > series.size()) throw ArgumentError("rolling_quantiles: range outside series");
  if (origin_lo >= origin_hi) throw ArgumentError("rolling_quantiles: empty origin range");

  const FilterRun run = filter_pass(spec, p, series, opts.forecast.filter);

  RollingQuantiles rq;
  rq.probs = probs;
  const std::size_t n = origin_hi - origin_lo;
  rq.origins.resize(n);
  rq.valid.assign(n, false);
  rq.night.assign(n, false);
  rq.values.assign(n, {});

  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t origin = origin_lo + i;
      rq.origins[i] = origin;
      const std::size_t target = origin + static_cast<std::size_t>(horizon_hours);
      if (target >= series.size() || !run.has_state[origin]) continue;
      try {
        const PredictiveDensity pd =
            forecast_from_run(spec, p, series, run, origin, horizon_hours, opts.forecast);
        rq.night[i] = pd.night;
        rq.values[i] = quantiles(pd, probs);
        rq.valid[i] = true;
      } catch (const NumericalError&) {
        // leave this origin invalid
      }
    }
  };

  const int nt = std::max(1, std::min<int>(opts.threads, static_cast<int>(n)));
  if (nt == 1) {
    run_range(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return rq;
}

CalibrationTable calibration_from_rolling(const RollingQuantiles& rq,
                                          const IrradianceSeries& series, int horizon_hours,
                                          const CalibrationOptions& opts) {
  CalibrationTable table;
  table.probs = rq.probs;
  table.frequency.assign(rq.probs.size(), 0.0);
  for (std::size_t i = 0; i < rq.origins.size(); ++i) {
    if (!rq.valid[i]) continue;
    const std::size_t target = rq.origins[i] + static_cast<std::size_t>(horizon_hours);
    if (series.missing[target]) continue;
    if (opts.exclude_night && rq.night[i]) continue;
    const double y = series.irradiance[target];
    for (std::size_t q = 0; q < rq.probs.size(); ++q) {
      if (y <= rq.values[i][q]) table.frequency[q] += 1.0;
    }
    ++table.n_counted;
  }
  if (table.n_counted == 0) throw ArgumentError("calibration: no usable forecast pairs");
  for (double& f : table.frequency) f /= static_cast<double>(table.n_counted);
  return table;
}

}  // namespace sunsde
