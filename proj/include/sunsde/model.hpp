#pragma once

#include "sunsde/params.hpp"
#include "sunsde/smallmat.hpp"
#include "sunsde/time_series.hpp"

namespace sunsde {

/// One member of the nested model family.
///
/// All models share the mean-reverting structure
///   dX = rate * (target(t) - X) dt + g(X) dW
/// and differ in the target, the reversion rate (constant or driven by a latent
/// state A), the diffusion shape, and the observation map:
///
///   M1  target = NWP*mu,                    g = sigma_x,          Y = X
///   M2  target = (NWP+beta)/(Max+delta)*mu, g = sigma_x,          Y = Max*X
///   M3  same target,                        g = sigma_x*X,        Y = Max*X
///   M4  same target,                        g = sigma_x*X(1-X),   Y = Max*X
///   M5  gamma scales the envelope,          g = sigma_x*X(1-X),   Y = gamma*Max*X
///   M6  rate = e^A, dA = theta_a(mu_a - A)dt + sigma_a dW2
///   M7  M6 with a diurnal modulation mu - omega1*sin(2*pi*t/24 + omega2)
struct ModelSpec {
  ModelId id = ModelId::M1;
  int state_dim = 1;
  // Declared state space of the X component; the A component is unbounded.
  bool x_bounded = false;  // true for M3-M7: X in (0,1)

  std::size_t n_params() const { return schema(id).size(); }
};

ModelSpec make_model(ModelId id);

/// Margin used when clamping states into an open (0,1) space.
constexpr double kStateEps = 1e-6;

/// Clamps the X component into the model's closed state space (no-op for M1/M2).
StateVec clamp_state(const ModelSpec& spec, StateVec x);

/// Throws ArgumentError when x lies outside the declared state space.
void check_state(const ModelSpec& spec, const StateVec& x);

/// Reversion target (NWP+beta)/(gamma*Max+delta)*scaling; the diurnal scaling
/// applies for M7 only. For M1 the target is NWP*mu.
double reversion_target(const ModelSpec& spec, const ExogenousAt& ex, const ParamVector& p);

/// Drift f(x, t). The time dependence enters through the exogenous inputs
/// (ex.hour_of_day carries the diurnal phase for M7).
StateVec drift(const ModelSpec& spec, const StateVec& x, const ExogenousAt& ex,
               const ParamVector& p);

/// Diagonal diffusion entries g(x); state-independent for M1/M2 and the A component.
StateVec diffusion(const ModelSpec& spec, const StateVec& x, const ParamVector& p);

/// Observation map h(x): predicted irradiance in W/m².
double observe(const ModelSpec& spec, const StateVec& x, const ExogenousAt& ex,
               const ParamVector& p);

/// Analytic Jacobian of the drift with respect to the state.
StateMat drift_jacobian(const ModelSpec& spec, const StateVec& x, const ExogenousAt& ex,
                        const ParamVector& p);

/// Analytic gradient of the observation map with respect to the state.
StateVec observation_jacobian(const ModelSpec& spec, const StateVec& x, const ExogenousAt& ex,
                              const ParamVector& p);

/// Multiplier s in h(x) = s * x_0 (0 at night for M2-M7).
double observation_scale(const ModelSpec& spec, const ExogenousAt& ex, const ParamVector& p);

}  // namespace sunsde
