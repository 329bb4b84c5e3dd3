#include "sunsde/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "sunsde/errors.hpp"
#include "sunsde/stats.hpp"

namespace sunsde {

double PredictiveDensity::quantile(double prob) const {
  if (!(prob > 0.0 && prob < 1.0)) throw ArgumentError("quantile: prob must lie in (0,1)");
  if (night) return sigma_eps * normal_quantile(prob);
  const std::size_t n = y.size();
  if (prob <= cdf.front()) return y.front();
  for (std::size_t i = 1; i < n; ++i) {
    if (cdf[i] >= prob) {
      const double span = cdf[i] - cdf[i - 1];
      const double t = span > 0.0 ? (prob - cdf[i - 1]) / span : 1.0;
      return y[i - 1] + t * (y[i] - y[i - 1]);
    }
  }
  return y.back();
}

double PredictiveDensity::cdf_at(double value) const {
  if (night) return normal_cdf(value / sigma_eps);
  if (value <= y.front()) return 0.0;
  if (value >= y.back()) return 1.0;
  const auto it = std::upper_bound(y.begin(), y.end(), value);
  const std::size_t i = static_cast<std::size_t>(it - y.begin());
  const double t = (value - y[i - 1]) / (y[i] - y[i - 1]);
  return cdf[i - 1] + t * (cdf[i] - cdf[i - 1]);
}

double PredictiveDensity::mean() const {
  if (night) return 0.0;
  double m = 0.0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    m += 0.5 * (pdf[i] * y[i] + pdf[i - 1] * y[i - 1]) * (y[i] - y[i - 1]);
  }
  return m;
}

std::vector<double> quantiles(const PredictiveDensity& pd, const std::vector<double>& probs) {
  if (probs.empty()) throw ArgumentError("quantiles: empty probability list");
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (!(probs[i] > probs[i - 1])) {
      throw ArgumentError("quantiles: probabilities must be strictly increasing");
    }
  }
  std::vector<double> out(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) out[i] = pd.quantile(probs[i]);
  return out;
}

namespace {

PredictiveDensity night_density(double sigma_eps, const ForecastOptions& opts) {
  PredictiveDensity pd;
  pd.night = true;
  pd.sigma_eps = sigma_eps;
  pd.obs_scale = 0.0;
  const int n = opts.n_obs_points;
  pd.y.resize(n);
  pd.pdf.resize(n);
  pd.cdf.resize(n);
  const double lo = -opts.noise_tail_sds * sigma_eps;
  const double hi = opts.noise_tail_sds * sigma_eps;
  for (int i = 0; i < n; ++i) {
    const double v = lo + (hi - lo) * i / (n - 1);
    pd.y[i] = v;
    pd.pdf[i] = normal_pdf(v / sigma_eps) / sigma_eps;
    pd.cdf[i] = normal_cdf(v / sigma_eps);
  }
  return pd;
}

// Initial X-marginal density on the model grid, from the filtered Gaussian in
// the transformed coordinate: p_x(x) = phi((psi(x)-m)/sd)/sd * psi'(x), with
// psi' = 1/g by the chain rule.
DensityGrid initial_state_density(const TransformedModel& tm, const ParamVector& p,
                                  std::vector<double> grid, double m, double var) {
  const double sd = std::sqrt(std::max(var, 1e-12));
  DensityGrid g;
  g.x = std::move(grid);
  g.pdf.resize(g.x.size());
  StateVec xv;
  xv.n = tm.state_dim();
  if (tm.state_dim() == 2) xv[1] = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    xv[0] = g.x[i];
    const double z = tm.forward(xv, p)[0];
    const double gx = diffusion(tm.base(), xv, p)[0];
    const double slope = tm.family() == TransformedModel::Family::Identity ? 1.0 : 1.0 / gx;
    g.pdf[i] = normal_pdf((z - m) / sd) / sd * slope;
  }
  g.normalize();
  return g;
}

// Grid for unbounded models sized by propagating the filter moments over the
// horizon and covering every intermediate hour.
std::vector<double> unbounded_grid(const TransformedModel& tm, const ParamVector& p,
                                   const IrradianceSeries& series, std::size_t origin,
                                   int horizon, double m, double var,
                                   const ForecastOptions& opts) {
  double lo = m - opts.fp.unbounded_sds * std::sqrt(var);
  double hi = m + opts.fp.unbounded_sds * std::sqrt(var);
  FilterState fs;
  fs.mean = StateVec(m);
  fs.cov = StateMat::diag(1, var);
  fs.time_h = 0.0;
  for (int h = 1; h <= horizon; ++h) {
    const ExogenousAt ex = series.exog_at(origin + static_cast<std::size_t>(h));
    fs = predict(fs, tm, static_cast<double>(h), ex, p, opts.filter);
    const double sd = std::sqrt(std::max(fs.cov(0, 0), 1e-12));
    lo = std::min(lo, fs.mean[0] - opts.fp.unbounded_sds * sd);
    hi = std::max(hi, fs.mean[0] + opts.fp.unbounded_sds * sd);
  }
  std::vector<double> grid(static_cast<std::size_t>(opts.fp.n_points));
  for (int i = 0; i < opts.fp.n_points; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (opts.fp.n_points - 1);
  }
  return grid;
}

}  // namespace

PredictiveDensity forecast_from_run(const ModelSpec& spec, const ParamVector& p,
                                    const IrradianceSeries& series, const FilterRun& run,
                                    std::size_t origin_index, int horizon_hours,
                                    const ForecastOptions& opts) {
  if (horizon_hours < 1) throw ArgumentError("forecast: horizon must be >= 1 hour");
  const std::size_t target = origin_index + static_cast<std::size_t>(horizon_hours);
  if (origin_index >= series.size() || target >= series.size()) {
    throw ArgumentError("forecast: origin/horizon outside the series range");
  }
  if (!run.has_state[origin_index]) {
    throw ArgumentError("forecast: filter state unavailable at the requested origin");
  }

  const TransformedModel tm(spec);
  const StateVec m = run.post_mean[origin_index];
  const StateMat cov = run.post_cov[origin_index];

  // state density propagated through the Fokker-Planck equation
  std::vector<double> grid = spec.x_bounded
                                 ? model_support_grid(tm, p, opts.fp)
                                 : unbounded_grid(tm, p, series, origin_index, horizon_hours,
                                                  m[0], cov(0, 0), opts);
  DensityGrid init = initial_state_density(tm, p, std::move(grid), m[0], cov(0, 0));
  const auto exog = [&series, origin_index](int slot) {
    return series.exog_at(origin_index + 1 + static_cast<std::size_t>(slot));
  };
  DensityGrid state = fokker_planck_solve(tm, p, std::move(init), 0.0,
                                          static_cast<double>(horizon_hours), exog,
                                          spec.state_dim == 2 ? m[1] : 0.0, opts.fp);

  const ExogenousAt ex_target = series.exog_at(target);
  const double s = observation_scale(spec, ex_target, p);

  PredictiveDensity pd;
  if (s <= 0.0) {
    pd = night_density(p.sigma_eps, opts);
  } else {
    pd.sigma_eps = p.sigma_eps;
    pd.obs_scale = s;
    const int ny = opts.n_obs_points;
    pd.y.resize(ny);
    pd.pdf.assign(ny, 0.0);
    pd.cdf.assign(ny, 0.0);
    const double pad = opts.noise_tail_sds * p.sigma_eps;
    const double y_lo = s * state.x.front() - pad;
    const double y_hi = s * state.x.back() + pad;

    // trapezoid weights over the state grid
    const std::size_t nx = state.x.size();
    std::vector<double> wgt(nx, 0.0);
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const double half = 0.5 * (state.x[i + 1] - state.x[i]);
      wgt[i] += half;
      wgt[i + 1] += half;
    }

    for (int jy = 0; jy < ny; ++jy) {
      const double yv = y_lo + (y_hi - y_lo) * jy / (ny - 1);
      pd.y[static_cast<std::size_t>(jy)] = yv;
      double dens = 0.0, cum = 0.0;
      for (std::size_t i = 0; i < nx; ++i) {
        const double wpx = wgt[i] * state.pdf[i];
        if (wpx == 0.0) continue;
        const double u = (yv - s * state.x[i]) / p.sigma_eps;
        dens += wpx * normal_pdf(u) / p.sigma_eps;
        cum += wpx * normal_cdf(u);
      }
      pd.pdf[static_cast<std::size_t>(jy)] = dens;
      pd.cdf[static_cast<std::size_t>(jy)] = cum;
    }
    const double total = pd.cdf.back();
    if (!(total > 0.0)) throw NumericalError("forecast: degenerate predictive density");
    for (auto& c : pd.cdf) c /= total;
    // keep the CDF monotone against roundoff
    for (std::size_t i = 1; i < pd.cdf.size(); ++i) {
      pd.cdf[i] = std::max(pd.cdf[i], pd.cdf[i - 1]);
    }
  }

  pd.origin_time = series.timestamps[origin_index];
  pd.origin_index = origin_index;
  pd.horizon_hours = horizon_hours;
  pd.a_mean_approx = spec.state_dim == 2;
  pd.state_density = std::move(state);
  return pd;
}

PredictiveDensity forecast_at_index(const ModelSpec& spec, const ParamVector& p,
                                    const IrradianceSeries& series, std::size_t origin_index,
                                    int horizon_hours, const ForecastOptions& opts) {
  const FilterRun run = filter_pass(spec, p, series, opts.filter);
  return forecast_from_run(spec, p, series, run, origin_index, horizon_hours, opts);
}

PredictiveDensity forecast(const ModelSpec& spec, const ParamVector& p,
                           const IrradianceSeries& series, UtcTime origin, int horizon_hours,
                           const ForecastOptions& opts) {
  const auto it = std::lower_bound(series.timestamps.begin(), series.timestamps.end(), origin);
  if (it == series.timestamps.end() || *it != origin) {
    throw ArgumentError("forecast: origin " + format_iso8601(origin) + " not in the series");
  }
  const std::size_t idx = static_cast<std::size_t>(it - series.timestamps.begin());
  return forecast_at_index(spec, p, series, idx, horizon_hours, opts);
}

}  // namespace sunsde
