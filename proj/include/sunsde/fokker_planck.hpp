#pragma once

#include <functional>
#include <vector>

#include "sunsde/lamperti.hpp"

namespace sunsde {

/// Probability density on an ordered support grid at one instant.
struct DensityGrid {
  std::vector<double> x;    // strictly increasing support points (cell centers)
  std::vector<double> pdf;  // density values, >= 0, trapezoid integral ~ 1
  double time_h = 0.0;

  double mass() const;      // trapezoidal integral
  double mean() const;
  double variance() const;
  /// Left-continuous CDF at y by trapezoidal accumulation.
  double cdf_at(double y) const;
  /// Scales pdf so the trapezoidal integral is exactly 1.
  void normalize();

  static DensityGrid point_mass(std::vector<double> support, double at, double time_h = 0.0);
  static DensityGrid gaussian(std::vector<double> support, double mean, double sd,
                              double time_h = 0.0);
};

struct FpOptions {
  int n_points = 400;
  double dt_hours = 0.05;
  double bound_eps = 1e-5;       // state-space truncation for bounded models
  double unbounded_sds = 8.0;    // half-width of the grid in predicted std devs
  int rannacher_steps = 2;       // implicit-Euler startup steps
  double max_courant = 100.0;    // advective CFL limit inside the mass region
};

/// Drift and diffusion fields for the scalar solver; D = g^2/2.
using DriftField = std::function<double(double x, double t_h)>;
using DiffusionField = std::function<double(double x, double t_h)>;

/// Evolves the density from t0 to t1 under dj/dt = -d/dx[f j] + d2/dx2[D j]
/// using a conservative finite-volume Crank-Nicolson scheme with upwinded
/// advection and zero-flux boundaries. Mass is conserved to the linear-solver
/// accuracy. Throws ConfigError when the grid cannot resolve the problem.
DensityGrid fp_evolve(const DriftField& f, const DiffusionField& D, DensityGrid init,
                      double t0_h, double t1_h, const FpOptions& opts = {});

/// Support grid for a model: uniform in the Lamperti coordinate between
/// psi(eps) and psi(1-eps) for bounded models (clusters points in the
/// vanishing-diffusion boundary layers), caller-supplied for unbounded ones.
std::vector<double> model_support_grid(const TransformedModel& tm, const ParamVector& p,
                                       const FpOptions& opts = {});

/// Piecewise-constant exogenous inputs: slot k applies over (t0+k, t0+k+1].
using ExogenousByHour = std::function<ExogenousAt(int hour_slot)>;

/// Solves the Fokker-Planck equation for the X component of a model in its
/// original coordinate. For two-state models the latent rate state is reduced to
/// its conditional mean path a(t) = mu_a + (a0 - mu_a) e^{-theta_a t} and the X
/// density is solved with the rate e^{a(t)} (recorded by the caller as an
/// approximation).
DensityGrid fokker_planck_solve(const TransformedModel& tm, const ParamVector& p,
                                DensityGrid init, double t0_h, double t1_h,
                                const ExogenousByHour& exog, double a0 = 0.0,
                                const FpOptions& opts = {});

}  // namespace sunsde
