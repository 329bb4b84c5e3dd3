#include "sunsde/ekf.hpp"

#include <cmath>
#include <string>

#include "sunsde/errors.hpp"

namespace sunsde {

namespace {

constexpr double kLogTwoPi = 1.83787706640934548356;

struct Moments {
  StateVec m;
  StateMat p;
};

Moments moment_derivative(const TransformedModel& tm, const Moments& s, const ExogenousAt& ex,
                          const ParamVector& p) {
  Moments d;
  d.m = tm.transformed_drift(s.m, ex, p);
  const StateMat a = tm.transformed_drift_jacobian(s.m, ex, p);
  d.p = matmul(a, s.p) + matmul(s.p, transpose(a));
  const StateVec g = tm.diffusion_diag(p);
  for (int i = 0; i < s.m.n; ++i) d.p(i, i) += g[i] * g[i];
  return d;
}

bool finite(const Moments& s) {
  for (int i = 0; i < s.m.n; ++i) {
    if (!std::isfinite(s.m[i])) return false;
    for (int j = 0; j < s.m.n; ++j) {
      if (!std::isfinite(s.p(i, j))) return false;
    }
  }
  return true;
}

}  // namespace

FilterState predict(const FilterState& fs, const TransformedModel& tm, double t_next_h,
                    const ExogenousAt& ex, const ParamVector& p, const FilterOptions& opts) {
  if (!(t_next_h > fs.time_h)) throw ArgumentError("predict: t_next must exceed current time");
  const double span = t_next_h - fs.time_h;

  // The covariance ODE contracts/expands at twice the linearization rate; near a
  // state-space boundary that rate can exceed what the configured resolution
  // keeps stable, so the substep count grows with the local stiffness.
  double stiffness = 0.0;
  {
    const StateMat a = tm.transformed_drift_jacobian(tm.clamp_transformed(fs.mean, p), ex, p);
    for (int i = 0; i < a.n; ++i) {
      double row = 0.0;
      for (int j = 0; j < a.n; ++j) row += std::fabs(a(i, j));
      stiffness = std::max(stiffness, row);
    }
  }
  const double needed = std::max(span * opts.substeps_per_hour, 1.5 * stiffness * span);
  if (needed > 2e4) {
    throw NumericalError("moment ODE too stiff to integrate at t=" +
                         std::to_string(fs.time_h) + " h");
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(needed)));
  const double h = span / steps;

  Moments s{tm.clamp_transformed(fs.mean, p), fs.cov};
  for (int k = 0; k < steps; ++k) {
    const Moments k1 = moment_derivative(tm, s, ex, p);
    Moments s2{s.m + (h / 2.0) * k1.m, s.p + (h / 2.0) * k1.p};
    const Moments k2 = moment_derivative(tm, s2, ex, p);
    Moments s3{s.m + (h / 2.0) * k2.m, s.p + (h / 2.0) * k2.p};
    const Moments k3 = moment_derivative(tm, s3, ex, p);
    Moments s4{s.m + h * k3.m, s.p + h * k3.p};
    const Moments k4 = moment_derivative(tm, s4, ex, p);
    s.m = s.m + (h / 6.0) * (k1.m + 2.0 * k2.m + (2.0 * k3.m + k4.m));
    s.p = s.p + (h / 6.0) * (k1.p + 2.0 * k2.p + (2.0 * k3.p + k4.p));
    // keep the evaluation point inside the clamped state space
    s.m = tm.clamp_transformed(s.m, p);
    if (!finite(s)) {
      throw NumericalError("non-finite drift while integrating moments near t=" +
                           std::to_string(fs.time_h + (k + 1) * h) + " h");
    }
  }
  symmetrize(s.p);

  FilterState out = fs;
  out.mean = s.m;
  out.cov = s.p;
  out.time_h = t_next_h;
  return out;
}

FilterState update(const FilterState& fs, double y, const TransformedModel& tm,
                   const ExogenousAt& ex, const ParamVector& p, Innovation* innovation) {
  const int n = fs.mean.n;
  const double y_hat = tm.observe(fs.mean, ex, p);
  const StateVec c = tm.observation_jacobian(fs.mean, ex, p);

  // R = C P C' + S
  double cpc = 0.0;
  StateVec pc;
  pc.n = n;
  for (int i = 0; i < n; ++i) {
    pc[i] = 0.0;
    for (int j = 0; j < n; ++j) pc[i] += fs.cov(i, j) * c[j];
  }
  for (int i = 0; i < n; ++i) cpc += c[i] * pc[i];
  const double r = cpc + p.sigma_eps * p.sigma_eps;
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw NumericalError("covariance collapse: innovation variance " + std::to_string(r) +
                         " at t=" + std::to_string(fs.time_h) + " h");
  }

  const double eps = y - y_hat;
  StateVec gain;
  gain.n = n;
  for (int i = 0; i < n; ++i) gain[i] = pc[i] / r;

  FilterState out = fs;
  for (int i = 0; i < n; ++i) out.mean[i] = fs.mean[i] + gain[i] * eps;

  // Joseph form: (I - K C) P (I - K C)' + S K K'
  StateMat ikc = StateMat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ikc(i, j) -= gain[i] * c[j];
  StateMat pj = matmul(matmul(ikc, fs.cov), transpose(ikc));
  const double s_noise = p.sigma_eps * p.sigma_eps;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pj(i, j) += s_noise * gain[i] * gain[j];
  symmetrize(pj);
  out.cov = pj;

  out.neg_log_lik = fs.neg_log_lik + 0.5 * (kLogTwoPi + std::log(r) + eps * eps / r);
  if (!std::isfinite(out.neg_log_lik)) {
    throw NumericalError("non-finite likelihood at t=" + std::to_string(fs.time_h) + " h");
  }
  if (innovation) {
    innovation->value = eps;
    innovation->variance = r;
  }
  return out;
}

namespace {

// The diffuse-but-proper start: invert the observation map at the first usable
// daytime observation. An observation is usable when the scale is invertible and
// the implied state is not absurdly deep in a boundary; within the first 72 h we
// keep scanning for an interior one before falling back.
std::size_t pick_init_index(const ModelSpec& spec, const ParamVector& p,
                            const IrradianceSeries& series) {
  const bool identity_obs = spec.id == ModelId::M1;
  std::size_t fallback = series.size();
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (series.missing[k]) continue;
    const double s = observation_scale(spec, series.exog_at(k), p);
    if (!identity_obs && s < 1.0) continue;  // night or sliver of dawn
    if (identity_obs) return k;
    if (fallback == series.size()) fallback = k;
    const double x0 = series.irradiance[k] / s;
    if (!spec.x_bounded) return k;
    if (x0 > 0.02 && x0 < 0.98) return k;
    if (k > fallback + 72) break;
  }
  if (fallback == series.size()) {
    throw ArgumentError("no usable observation to initialize the filter");
  }
  return fallback;
}

}  // namespace

FilterRun filter_pass(const ModelSpec& spec, const ParamVector& p,
                      const IrradianceSeries& series, const FilterOptions& opts) {
  if (series.empty()) throw ArgumentError("filter_pass: empty series");
  validate_params(p, spec.id);
  const TransformedModel tm(spec);

  FilterRun run;
  run.post_mean.resize(series.size());
  run.post_cov.resize(series.size());
  run.has_state.assign(series.size(), false);

  const std::size_t k0 = pick_init_index(spec, p, series);
  run.init_index = k0;

  FilterState fs;
  fs.time_h = static_cast<double>(k0);
  {
    const double s = observation_scale(spec, series.exog_at(k0), p);
    StateVec x0;
    x0.n = spec.state_dim;
    x0[0] = spec.id == ModelId::M1 ? series.irradiance[k0] : series.irradiance[k0] / s;
    x0 = clamp_state(spec, x0);
    if (spec.state_dim == 2) x0[1] = p.mu_a;
    fs.mean = tm.forward(x0, p);
    fs.cov = StateMat::diag(spec.state_dim, opts.init_x_variance,
                            spec.state_dim == 2
                                ? p.sigma_a * p.sigma_a / (2.0 * p.theta_a)
                                : 0.0);
  }
  run.post_mean[k0] = fs.mean;
  run.post_cov[k0] = fs.cov;
  run.has_state[k0] = true;

  for (std::size_t k = k0 + 1; k < series.size(); ++k) {
    const ExogenousAt ex = series.exog_at(k);
    try {
      fs = predict(fs, tm, static_cast<double>(k), ex, p, opts);
      if (!series.missing[k]) {
        Innovation inn;
        inn.index = k;
        fs = update(fs, series.irradiance[k], tm, ex, p, &inn);
        run.innovations.push_back(inn);
        run.std_residuals.push_back(inn.value / std::sqrt(inn.variance));
        ++run.n_obs;
      }
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " [series row " + std::to_string(k + 1) +
                           "]");
    }
    run.post_mean[k] = fs.mean;
    run.post_cov[k] = fs.cov;
    run.has_state[k] = true;
  }

  run.neg_log_lik = fs.neg_log_lik;
  return run;
}

}  // namespace sunsde
