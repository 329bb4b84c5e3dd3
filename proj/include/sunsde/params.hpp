#pragma once

#include <string>
#include <vector>

namespace sunsde {

enum class ModelId { M1, M2, M3, M4, M5, M6, M7 };

ModelId model_id_from_string(const std::string& s);
std::string to_string(ModelId id);

enum class ParamId {
  Theta,     // mean-reversion rate (M1-M5)
  ThetaA,    // reversion rate of the latent rate process (M6-M7)
  MuA,       // level of the latent rate process
  SigmaA,    // noise scale of the latent rate process
  Mu,        // scaling of the forecast input
  Beta,      // night-time regularizer added to the forecast input
  Gamma,     // envelope scaling factor, in (0, 1]
  Omega1,    // diurnal amplitude, |omega1| < mu
  Omega2,    // diurnal phase
  SigmaX,    // system noise scale
  SigmaEps,  // observation noise std dev
};

const char* name(ParamId id);
ParamId param_id_from_string(const std::string& s);

/// Named parameter values. The additive envelope constant delta is fixed, not
/// estimated. Fields not in a model's schema are ignored by that model.
struct ParamVector {
  double theta = 1.0;
  double theta_a = 0.3;
  double mu_a = 0.0;
  double sigma_a = 0.3;
  double mu = 1.0;
  double beta = 0.005;  // night target beta*mu/delta stays below 1
  double gamma = 0.9;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double sigma_x = 1.0;
  double sigma_eps = 10.0;

  static constexpr double delta = 0.01;

  double get(ParamId id) const;
  void set(ParamId id, double value);
};

/// Estimated parameters of a model, in canonical order (Mu precedes Omega1 so the
/// amplitude bound can be applied during constrain()).
const std::vector<ParamId>& schema(ModelId id);

/// Throws ArgumentError when a parameter violates its declared domain.
void validate_params(const ParamVector& p, ModelId id);

/// Maps an unconstrained vector (schema order) onto the declared domains:
/// exp for positive parameters, logistic for the unit interval, mu*tanh for the
/// diurnal amplitude, identity otherwise. Inverse of unconstrain().
ParamVector constrain(const std::vector<double>& free_values, ModelId id);

/// Inverse of constrain(); throws ArgumentError for values at the boundary of an
/// open domain. Round-trips with constrain() to 1e-12.
std::vector<double> unconstrain(const ParamVector& p, ModelId id);

}  // namespace sunsde
