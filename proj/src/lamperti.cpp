#include "sunsde/lamperti.hpp"

#include <algorithm>
#include <cmath>

#include "sunsde/errors.hpp"

namespace sunsde {

namespace {

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

// Drift and Jacobian evaluations clamp u = sigma_x * z here. Beyond this the
// boundary distance x(1-x) would underflow to an exact 0 and ratios like
// (target - x)/q could hit 0/0; at +-600 the product stays ~1e-261, so the
// expressions saturate to huge-but-well-defined values that the simulation
// drift cap then bounds.
constexpr double kMaxLogit = 600.0;

// x(1-x) evaluated from u = sigma_x * z without catastrophic rounding at the
// tails: logistic(u) * logistic(-u).
double logistic_product(double u) {
  const double e = std::exp(-std::fabs(u));
  const double d = 1.0 + e;
  return e / (d * d);
}

}  // namespace

TransformedModel::TransformedModel(const ModelSpec& spec) : spec_(spec) {
  switch (spec.id) {
    case ModelId::M1:
    case ModelId::M2: family_ = Family::Identity; break;
    case ModelId::M3: family_ = Family::LogScale; break;
    default: family_ = Family::LogitScale; break;
  }
}

StateVec TransformedModel::forward(const StateVec& x, const ParamVector& p) const {
  // domain of psi itself: (0, inf) for the log map, (0, 1) for the logit map
  StateVec z = x;
  switch (family_) {
    case Family::Identity: break;
    case Family::LogScale:
      if (!(x[0] > 0.0)) throw ArgumentError("state at or beyond lower bound");
      z[0] = std::log(x[0]) / p.sigma_x;
      break;
    case Family::LogitScale:
      if (!(x[0] > 0.0 && x[0] < 1.0)) throw ArgumentError("state at or beyond bound");
      z[0] = std::log(x[0] / (1.0 - x[0])) / p.sigma_x;
      break;
  }
  return z;
}

StateVec TransformedModel::inverse(const StateVec& z, const ParamVector& p) const {
  StateVec x = z;
  switch (family_) {
    case Family::Identity: break;
    case Family::LogScale: x[0] = std::exp(p.sigma_x * z[0]); break;
    case Family::LogitScale: x[0] = logistic(p.sigma_x * z[0]); break;
  }
  return x;
}

StateVec TransformedModel::transformed_drift(const StateVec& z, const ExogenousAt& ex,
                                             const ParamVector& p) const {
  StateVec f;
  f.n = spec_.state_dim;
  const double target = reversion_target(spec_, ex, p);
  const double rate = spec_.state_dim == 2 ? std::exp(z[1]) : p.theta;
  switch (family_) {
    case Family::Identity:
      f[0] = p.theta * (target - z[0]);
      break;
    case Family::LogScale:
      // f/g - g'/2 with x = e^{sigma z}; written via e^{-sigma z} so large z
      // underflows instead of overflowing.
      f[0] = (rate * target / p.sigma_x) * std::exp(-p.sigma_x * z[0]) - rate / p.sigma_x -
             p.sigma_x / 2.0;
      break;
    case Family::LogitScale: {
      const double u = std::clamp(p.sigma_x * z[0], -kMaxLogit, kMaxLogit);
      const double x = logistic(u);
      const double q = logistic_product(u);  // x(1-x)
      f[0] = rate * (target - x) / (p.sigma_x * q) - p.sigma_x * (1.0 - 2.0 * x) / 2.0;
      break;
    }
  }
  if (spec_.state_dim == 2) f[1] = p.theta_a * (p.mu_a - z[1]);
  return f;
}

StateMat TransformedModel::transformed_drift_jacobian(const StateVec& z, const ExogenousAt& ex,
                                                      const ParamVector& p) const {
  StateMat j = StateMat::zero(spec_.state_dim);
  const double target = reversion_target(spec_, ex, p);
  const double rate = spec_.state_dim == 2 ? std::exp(z[1]) : p.theta;
  switch (family_) {
    case Family::Identity:
      j(0, 0) = -p.theta;
      break;
    case Family::LogScale:
      j(0, 0) = -rate * target * std::exp(-p.sigma_x * z[0]);
      break;
    case Family::LogitScale: {
      const double u = std::clamp(p.sigma_x * z[0], -kMaxLogit, kMaxLogit);
      const double x = logistic(u);
      const double q = logistic_product(u);
      j(0, 0) = -rate - rate * (target - x) * (1.0 - 2.0 * x) / q +
                p.sigma_x * p.sigma_x * q;
      if (spec_.state_dim == 2) {
        j(0, 1) = rate * (target - x) / (p.sigma_x * q);
      }
      break;
    }
  }
  if (spec_.state_dim == 2) j(1, 1) = -p.theta_a;
  return j;
}

StateVec TransformedModel::clamp_transformed(StateVec z, const ParamVector& p) const {
  if (family_ == Family::Identity) return z;
  StateVec lo;
  lo.n = spec_.state_dim;
  lo[0] = kStateEps;
  StateVec hi = lo;
  hi[0] = 1.0 - kStateEps;
  z[0] = std::clamp(z[0], forward(lo, p)[0], forward(hi, p)[0]);
  return z;
}

StateVec TransformedModel::diffusion_diag(const ParamVector& p) const {
  StateVec g;
  g.n = spec_.state_dim;
  g[0] = family_ == Family::Identity ? p.sigma_x : 1.0;
  if (spec_.state_dim == 2) g[1] = p.sigma_a;
  return g;
}

double TransformedModel::observe(const StateVec& z, const ExogenousAt& ex,
                                 const ParamVector& p) const {
  return observation_scale(spec_, ex, p) * inverse(z, p)[0];
}

StateVec TransformedModel::observation_jacobian(const StateVec& z, const ExogenousAt& ex,
                                                const ParamVector& p) const {
  StateVec c;
  c.n = spec_.state_dim;
  const double s = observation_scale(spec_, ex, p);
  switch (family_) {
    case Family::Identity: c[0] = s; break;
    case Family::LogScale: c[0] = s * p.sigma_x * std::exp(p.sigma_x * z[0]); break;
    case Family::LogitScale: c[0] = s * p.sigma_x * logistic_product(p.sigma_x * z[0]); break;
  }
  if (spec_.state_dim == 2) c[1] = 0.0;
  return c;
}

}  // namespace sunsde
