#include "sunsde/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sunsde/errors.hpp"
#include "sunsde/lamperti.hpp"
#include "sunsde/rng.hpp"
#include "sunsde/time_utils.hpp"

namespace sunsde {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }
}  // namespace

void fill_synthetic_nwp(IrradianceSeries& series, std::uint64_t seed,
                        const SyntheticOptions& opts) {
  Rng rng(seed, 7001);
  double slow = 0.0, fast = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    slow = opts.nwp_ar * slow + opts.nwp_noise * rng.normal();
    fast = opts.nwp_fast_ar * fast + opts.nwp_fast_noise * rng.normal();
    const double doy = static_cast<double>(day_of_year(series.timestamps[i]));
    const double level = opts.nwp_level +
                         opts.nwp_seasonal * std::sin(kTwoPi * (doy - 80.0) / 365.0) + slow +
                         fast;
    series.nwp[i] = series.max_irradiance[i] * opts.nwp_clear_sky * logistic(level);
  }
}

StateVec simulate_observations(const ModelSpec& spec, const ParamVector& p,
                               IrradianceSeries& series, std::uint64_t seed,
                               const SyntheticOptions& opts) {
  if (series.empty()) throw ArgumentError("simulate_observations: empty series");
  validate_params(p, spec.id);
  const TransformedModel tm(spec);

  // start at the exogenous-implied level so there is no burn-in transient
  StateVec x0;
  x0.n = spec.state_dim;
  x0[0] = spec.id == ModelId::M1 ? reversion_target(spec, series.exog_at(0), p)
                                 : std::clamp(reversion_target(spec, series.exog_at(0), p),
                                              0.05, 0.95);
  if (spec.state_dim == 2) x0[1] = p.mu_a;

  Rng path_rng(seed, 1);
  Rng obs_rng(seed, 2);

  StateVec z = tm.forward(clamp_state(spec, x0), p);
  const StateVec g = tm.diffusion_diag(p);

  for (std::size_t k = 0; k < series.size(); ++k) {
    if (k > 0) {
      // advance one hour under the exogenous inputs of the interval ending at k
      const ExogenousAt ex = series.exog_at(k);
      double t = 0.0;
      while (t < 1.0 - 1e-12) {
        const double dt = std::min(opts.em_step_hours, 1.0 - t);
        const double sq = std::sqrt(dt);
        const StateVec f = tm.transformed_drift(z, ex, p);
        for (int c = 0; c < z.n; ++c) {
          z[c] += std::clamp(f[c], -1e6, 1e6) * dt + g[c] * sq * path_rng.normal();
        }
        t += dt;
      }
    }
    const StateVec x = clamp_state(spec, tm.inverse(z, p));
    const double y = observe(spec, x, series.exog_at(k), p) + p.sigma_eps * obs_rng.normal();
    const bool night = series.max_irradiance[k] <= 0.0;
    if (night && opts.night == NightHandling::Mask) {
      series.missing[k] = true;
      series.irradiance[k] = std::numeric_limits<double>::quiet_NaN();
    } else {
      series.irradiance[k] = opts.night == NightHandling::ClampZero ? std::max(0.0, y) : y;
      series.missing[k] = false;
    }
  }
  // negative daytime observations (deep dawn noise) fall under the container rule
  series.validate();
  return x0;
}

IrradianceSeries make_synthetic_series(const ModelSpec& spec, const ParamVector& p,
                                       const SiteGeometry& site, UtcTime start,
                                       std::size_t n_hours, std::uint64_t seed,
                                       const SyntheticOptions& opts) {
  IrradianceSeries series = make_hourly_series(start, n_hours, site);
  fill_synthetic_nwp(series, seed, opts);
  simulate_observations(spec, p, series, seed, opts);
  return series;
}

}  // namespace sunsde
