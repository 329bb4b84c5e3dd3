#pragma once

#include <cstddef>
#include <vector>

#include "sunsde/lamperti.hpp"

namespace sunsde {

struct FilterOptions {
  /// RK4 sub-steps per hour for the moment ODEs.
  int substeps_per_hour = 10;
  /// Prior variance of the X component (transformed scale) at initialization.
  double init_x_variance = 0.25;
};

/// Filter state in transformed coordinates.
struct FilterState {
  StateVec mean;
  StateMat cov;
  double time_h = 0.0;
  double neg_log_lik = 0.0;
};

/// One processed observation: innovation and its predicted variance.
struct Innovation {
  std::size_t index;  // series row
  double value;       // y - y_hat
  double variance;    // C P C' + sigma_eps^2
};

/// Output of a full filtering sweep.
struct FilterRun {
  double neg_log_lik = 0.0;
  std::size_t n_obs = 0;  // observations contributing to the likelihood
  std::size_t init_index = 0;
  std::vector<Innovation> innovations;
  std::vector<double> std_residuals;  // innovation / sqrt(variance), aligned with innovations
  // Posterior state per series row (valid where has_state is set); used as
  // forecast origins.
  std::vector<StateVec> post_mean;
  std::vector<StateMat> post_cov;
  std::vector<bool> has_state;
};

/// Propagates mean and covariance over [fs.time_h, t_next_h] with the moment ODEs
///   dm/dt = f(m, t),   dP/dt = A P + P A' + G G',   A = df/dm,
/// integrated by classical RK4; exogenous inputs are held constant over the
/// interval. The likelihood is unchanged.
FilterState predict(const FilterState& fs, const TransformedModel& tm, double t_next_h,
                    const ExogenousAt& ex, const ParamVector& p,
                    const FilterOptions& opts = {});

/// Measurement update at the current time:
///   R = C P C' + sigma_eps^2, K = P C' / R, m+ = m + K eps,
/// with the Joseph-stabilized covariance update, and
///   nll += (log(2 pi R) + eps^2 / R) / 2.
/// Throws NumericalError when R <= 0. When `innovation` is given, the innovation
/// and its variance are written there.
FilterState update(const FilterState& fs, double y, const TransformedModel& tm,
                   const ExogenousAt& ex, const ParamVector& p,
                   Innovation* innovation = nullptr);

/// Sequential predict/update over the whole series. The first usable observation
/// initializes the state by inverting the observation map (clamped into the state
/// space) and contributes no likelihood; missing observations skip the update.
FilterRun filter_pass(const ModelSpec& spec, const ParamVector& p,
                      const IrradianceSeries& series, const FilterOptions& opts = {});

}  // namespace sunsde
