#include "sunsde/model.hpp"

#include <algorithm>
#include <cmath>

#include "sunsde/errors.hpp"

namespace sunsde {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

ModelSpec make_model(ModelId id) {
  ModelSpec spec;
  spec.id = id;
  spec.state_dim = (id == ModelId::M6 || id == ModelId::M7) ? 2 : 1;
  spec.x_bounded = id != ModelId::M1 && id != ModelId::M2;
  return spec;
}

StateVec clamp_state(const ModelSpec& spec, StateVec x) {
  if (spec.x_bounded) {
    x[0] = std::clamp(x[0], kStateEps, 1.0 - kStateEps);
  }
  return x;
}

void check_state(const ModelSpec& spec, const StateVec& x) {
  if (x.n != spec.state_dim) throw ArgumentError("state dimension mismatch");
  for (int i = 0; i < x.n; ++i) {
    if (!std::isfinite(x[i])) throw ArgumentError("non-finite state");
  }
  if (spec.x_bounded && (x[0] <= 0.0 || x[0] >= 1.0)) {
    throw ArgumentError("state X outside open interval (0, 1)");
  }
}

double reversion_target(const ModelSpec& spec, const ExogenousAt& ex, const ParamVector& p) {
  switch (spec.id) {
    case ModelId::M1:
      return ex.nwp * p.mu;
    case ModelId::M2:
    case ModelId::M3:
    case ModelId::M4:
      return (ex.nwp + p.beta) / (ex.max_irradiance + ParamVector::delta) * p.mu;
    case ModelId::M5:
    case ModelId::M6:
      return (ex.nwp + p.beta) / (p.gamma * ex.max_irradiance + ParamVector::delta) * p.mu;
    case ModelId::M7: {
      const double scaling =
          p.mu - p.omega1 * std::sin(kTwoPi * ex.hour_of_day / 24.0 + p.omega2);
      return (ex.nwp + p.beta) / (p.gamma * ex.max_irradiance + ParamVector::delta) * scaling;
    }
  }
  return 0.0;
}

// Reversion rate of the X component: theta for M1-M5, e^A for M6-M7.
static double reversion_rate(const ModelSpec& spec, const StateVec& x, const ParamVector& p) {
  return spec.state_dim == 2 ? std::exp(x[1]) : p.theta;
}

StateVec drift(const ModelSpec& spec, const StateVec& x, const ExogenousAt& ex,
               const ParamVector& p) {
  check_state(spec, x);
  const double target = reversion_target(spec, ex, p);
  StateVec f;
  f.n = spec.state_dim;
  f[0] = reversion_rate(spec, x, p) * (target - x[0]);
  if (spec.state_dim == 2) f[1] = p.theta_a * (p.mu_a - x[1]);
  return f;
}

StateVec diffusion(const ModelSpec& spec, const StateVec& x, const ParamVector& p) {
  check_state(spec, x);
  StateVec g;
  g.n = spec.state_dim;
  switch (spec.id) {
    case ModelId::M1:
    case ModelId::M2: g[0] = p.sigma_x; break;
    case ModelId::M3: g[0] = p.sigma_x * x[0]; break;
    default: g[0] = p.sigma_x * x[0] * (1.0 - x[0]); break;
  }
  if (spec.state_dim == 2) g[1] = p.sigma_a;
  return g;
}

double observe(const ModelSpec& spec, const StateVec& x, const ExogenousAt& ex,
               const ParamVector& p) {
  check_state(spec, x);
  return observation_scale(spec, ex, p) * x[0];
}

double observation_scale(const ModelSpec& spec, const ExogenousAt& ex, const ParamVector& p) {
  switch (spec.id) {
    case ModelId::M1: return 1.0;
    case ModelId::M2:
    case ModelId::M3:
    case ModelId::M4: return ex.max_irradiance;
    default: return p.gamma * ex.max_irradiance;
  }
}

StateMat drift_jacobian(const ModelSpec& spec, const StateVec& x, const ExogenousAt& ex,
                        const ParamVector& p) {
  check_state(spec, x);
  StateMat j = StateMat::zero(spec.state_dim);
  const double rate = reversion_rate(spec, x, p);
  j(0, 0) = -rate;
  if (spec.state_dim == 2) {
    j(0, 1) = rate * (reversion_target(spec, ex, p) - x[0]);
    j(1, 1) = -p.theta_a;
  }
  return j;
}

StateVec observation_jacobian(const ModelSpec& spec, const StateVec& x, const ExogenousAt& ex,
                              const ParamVector& p) {
  check_state(spec, x);
  StateVec c;
  c.n = spec.state_dim;
  c[0] = observation_scale(spec, ex, p);
  if (spec.state_dim == 2) c[1] = 0.0;
  return c;
}

}  // namespace sunsde
