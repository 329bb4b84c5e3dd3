#pragma once

#include <cstdint>

#include "sunsde/model.hpp"

namespace sunsde {

enum class NightHandling {
  Mask,     // night rows become missing (estimation studies: no censoring bias)
  ClampZero  // negative noisy observations clamp to 0 (realistic exported data)
};

struct SyntheticOptions {
  double em_step_hours = 0.02;  // Euler-Maruyama step for the latent path
  NightHandling night = NightHandling::Mask;
  /// Transmittance process behind the synthetic forecast input:
  /// clear_sky * logistic(level + seasonal*sin(...) + slow AR(1) + fast AR(1))
  /// * envelope. The slow component models multi-day cloudiness regimes, the
  /// fast one hour-scale forecast movement. The clear-sky fraction keeps the
  /// forecast below the gamma-scaled envelope (atmospheric refraction always
  /// removes a share of the extraterrestrial irradiance), which is what makes
  /// the bounded models well-posed.
  double nwp_clear_sky = 0.72;
  double nwp_level = 0.6;
  double nwp_seasonal = 0.5;
  double nwp_ar = 0.98;
  double nwp_noise = 0.22;
  double nwp_fast_ar = 0.55;
  double nwp_fast_noise = 0.35;
};

/// Fills the series' forecast-input column with a plausible signal: the
/// envelope scaled by a smooth stochastic transmittance. Deterministic per seed.
void fill_synthetic_nwp(IrradianceSeries& series, std::uint64_t seed,
                        const SyntheticOptions& opts = {});

/// Simulates one latent path of the model driven by the series' exogenous
/// inputs and fills the observation column with h(X_k) + Gaussian noise.
/// Returns the initial state used.
StateVec simulate_observations(const ModelSpec& spec, const ParamVector& p,
                               IrradianceSeries& series, std::uint64_t seed,
                               const SyntheticOptions& opts = {});

/// Convenience: hourly series at `site` starting at `start`, synthetic NWP,
/// observations simulated from (spec, p). Deterministic per seed.
IrradianceSeries make_synthetic_series(const ModelSpec& spec, const ParamVector& p,
                                       const SiteGeometry& site, UtcTime start,
                                       std::size_t n_hours, std::uint64_t seed,
                                       const SyntheticOptions& opts = {});

}  // namespace sunsde
