#pragma once

#include "sunsde/model.hpp"

namespace sunsde {

/// State-space change of variables z = psi(x) = integral dx/g(x) that makes the
/// diffusion of the X component constant, so the continuous-discrete filter can
/// operate on it. Two closed forms cover the whole family:
///
///   g = sigma_x * x        =>  psi(x) = log(x) / sigma_x
///   g = sigma_x * x(1-x)   =>  psi(x) = log(x/(1-x)) / sigma_x
///
/// psi is strictly increasing on the state space, the transformed diffusion is
/// identically 1, and the drift becomes f/g - g'/2 (the transforms carry no
/// explicit time dependence). M1/M2 pass through unchanged (their diffusion is
/// already state-independent) and the latent A state of M6/M7 keeps its native
/// constant diffusion sigma_a.
class TransformedModel {
 public:
  enum class Family { Identity, LogScale, LogitScale };

  explicit TransformedModel(const ModelSpec& spec);

  const ModelSpec& base() const { return spec_; }
  Family family() const { return family_; }
  int state_dim() const { return spec_.state_dim; }

  /// psi per state component; the A component passes through unchanged.
  /// Throws ArgumentError when x is at or beyond a state-space boundary.
  StateVec forward(const StateVec& x, const ParamVector& p) const;

  /// psi^{-1}; total on the reals, image is the open state space.
  StateVec inverse(const StateVec& z, const ParamVector& p) const;

  /// Drift of the transformed process, f(psi^{-1}(z))/g - g'/2 per component.
  StateVec transformed_drift(const StateVec& z, const ExogenousAt& ex,
                             const ParamVector& p) const;

  /// Analytic Jacobian of transformed_drift with respect to z.
  StateMat transformed_drift_jacobian(const StateVec& z, const ExogenousAt& ex,
                                      const ParamVector& p) const;

  /// Constant diagonal diffusion in the transformed coordinates:
  /// {sigma_x} for M1/M2, {1} for M3-M5, {1, sigma_a} for M6/M7.
  StateVec diffusion_diag(const ParamVector& p) const;

  /// Observation map and its gradient, both in z coordinates.
  double observe(const StateVec& z, const ExogenousAt& ex, const ParamVector& p) const;
  StateVec observation_jacobian(const StateVec& z, const ExogenousAt& ex,
                                const ParamVector& p) const;

  /// Clamps the transformed X component into the image of the clamped state
  /// space [eps_s, 1-eps_s] (no-op for M1/M2 and the A component). The filter
  /// applies this before evaluating drift/diffusion.
  StateVec clamp_transformed(StateVec z, const ParamVector& p) const;

 private:
  ModelSpec spec_;
  Family family_;
};

}  // namespace sunsde
