#include "sunsde/params.hpp"

#include <cmath>

#include "sunsde/errors.hpp"

namespace sunsde {

ModelId model_id_from_string(const std::string& s) {
  if (s == "M1") return ModelId::M1;
  if (s == "M2") return ModelId::M2;
  if (s == "M3") return ModelId::M3;
  if (s == "M4") return ModelId::M4;
  if (s == "M5") return ModelId::M5;
  if (s == "M6") return ModelId::M6;
  if (s == "M7") return ModelId::M7;
  throw ArgumentError("unknown model id '" + s + "', expected M1..M7");
}

std::string to_string(ModelId id) {
  switch (id) {
    case ModelId::M1: return "M1";
    case ModelId::M2: return "M2";
    case ModelId::M3: return "M3";
    case ModelId::M4: return "M4";
    case ModelId::M5: return "M5";
    case ModelId::M6: return "M6";
    case ModelId::M7: return "M7";
  }
  return "?";
}

const char* name(ParamId id) {
  switch (id) {
    case ParamId::Theta: return "theta";
    case ParamId::ThetaA: return "theta_a";
    case ParamId::MuA: return "mu_a";
    case ParamId::SigmaA: return "sigma_a";
    case ParamId::Mu: return "mu";
    case ParamId::Beta: return "beta";
    case ParamId::Gamma: return "gamma";
    case ParamId::Omega1: return "omega1";
    case ParamId::Omega2: return "omega2";
    case ParamId::SigmaX: return "sigma_x";
    case ParamId::SigmaEps: return "sigma_eps";
  }
  return "?";
}

ParamId param_id_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(ParamId::SigmaEps); ++i) {
    const auto id = static_cast<ParamId>(i);
    if (s == name(id)) return id;
  }
  throw ArgumentError("unknown parameter name '" + s + "'");
}

double ParamVector::get(ParamId id) const {
  switch (id) {
    case ParamId::Theta: return theta;
    case ParamId::ThetaA: return theta_a;
    case ParamId::MuA: return mu_a;
    case ParamId::SigmaA: return sigma_a;
    case ParamId::Mu: return mu;
    case ParamId::Beta: return beta;
    case ParamId::Gamma: return gamma;
    case ParamId::Omega1: return omega1;
    case ParamId::Omega2: return omega2;
    case ParamId::SigmaX: return sigma_x;
    case ParamId::SigmaEps: return sigma_eps;
  }
  return 0.0;
}

void ParamVector::set(ParamId id, double value) {
  switch (id) {
    case ParamId::Theta: theta = value; return;
    case ParamId::ThetaA: theta_a = value; return;
    case ParamId::MuA: mu_a = value; return;
    case ParamId::SigmaA: sigma_a = value; return;
    case ParamId::Mu: mu = value; return;
    case ParamId::Beta: beta = value; return;
    case ParamId::Gamma: gamma = value; return;
    case ParamId::Omega1: omega1 = value; return;
    case ParamId::Omega2: omega2 = value; return;
    case ParamId::SigmaX: sigma_x = value; return;
    case ParamId::SigmaEps: sigma_eps = value; return;
  }
}

const std::vector<ParamId>& schema(ModelId id) {
  using P = ParamId;
  static const std::vector<ParamId> m1{P::Theta, P::Mu, P::SigmaX, P::SigmaEps};
  static const std::vector<ParamId> m2{P::Theta, P::Mu, P::Beta, P::SigmaX, P::SigmaEps};
  static const std::vector<ParamId> m5{P::Theta, P::Mu, P::Beta, P::Gamma, P::SigmaX,
                                       P::SigmaEps};
  static const std::vector<ParamId> m6{P::ThetaA, P::MuA,    P::SigmaA, P::Mu,
                                       P::Beta,   P::Gamma,  P::SigmaX, P::SigmaEps};
  static const std::vector<ParamId> m7{P::ThetaA, P::MuA,    P::SigmaA, P::Mu,
                                       P::Beta,   P::Gamma,  P::Omega1, P::Omega2,
                                       P::SigmaX, P::SigmaEps};
  switch (id) {
    case ModelId::M1: return m1;
    case ModelId::M2:
    case ModelId::M3:
    case ModelId::M4: return m2;
    case ModelId::M5: return m5;
    case ModelId::M6: return m6;
    case ModelId::M7: return m7;
  }
  return m1;
}

namespace {

enum class Domain { Positive, UnitInterval, AmplitudeBound, Free };

Domain domain_of(ParamId id) {
  switch (id) {
    case ParamId::Theta:
    case ParamId::ThetaA:
    case ParamId::SigmaA:
    case ParamId::Mu:
    case ParamId::Beta:
    case ParamId::SigmaX:
    case ParamId::SigmaEps: return Domain::Positive;
    case ParamId::Gamma: return Domain::UnitInterval;
    case ParamId::Omega1: return Domain::AmplitudeBound;
    case ParamId::MuA:
    case ParamId::Omega2: return Domain::Free;
  }
  return Domain::Free;
}

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

}  // namespace

void validate_params(const ParamVector& p, ModelId id) {
  for (ParamId pid : schema(id)) {
    const double v = p.get(pid);
    if (!std::isfinite(v)) throw ArgumentError(std::string(name(pid)) + " is not finite");
    switch (domain_of(pid)) {
      case Domain::Positive:
        if (v <= 0.0) throw ArgumentError(std::string(name(pid)) + " must be > 0");
        break;
      case Domain::UnitInterval:
        if (v <= 0.0 || v > 1.0) throw ArgumentError("gamma must lie in (0, 1]");
        break;
      case Domain::AmplitudeBound:
        if (std::fabs(v) >= p.mu) throw ArgumentError("|omega1| must be < mu");
        break;
      case Domain::Free: break;
    }
  }
}

ParamVector constrain(const std::vector<double>& free_values, ModelId id) {
  const auto& sch = schema(id);
  if (free_values.size() != sch.size()) {
    throw ArgumentError("free vector has " + std::to_string(free_values.size()) +
                        " entries, schema needs " + std::to_string(sch.size()));
  }
  ParamVector p;
  for (std::size_t i = 0; i < sch.size(); ++i) {
    const double u = free_values[i];
    switch (domain_of(sch[i])) {
      case Domain::Positive: p.set(sch[i], std::exp(u)); break;
      case Domain::UnitInterval: p.set(sch[i], logistic(u)); break;
      case Domain::AmplitudeBound: p.set(sch[i], p.mu * std::tanh(u)); break;
      case Domain::Free: p.set(sch[i], u); break;
    }
  }
  return p;
}

std::vector<double> unconstrain(const ParamVector& p, ModelId id) {
  const auto& sch = schema(id);
  std::vector<double> u(sch.size());
  for (std::size_t i = 0; i < sch.size(); ++i) {
    const double v = p.get(sch[i]);
    switch (domain_of(sch[i])) {
      case Domain::Positive:
        if (v <= 0.0) {
          throw ArgumentError(std::string(name(sch[i])) + " at boundary of open domain");
        }
        u[i] = std::log(v);
        break;
      case Domain::UnitInterval:
        if (v <= 0.0 || v >= 1.0) {
          throw ArgumentError("gamma at boundary of open domain");
        }
        u[i] = std::log(v / (1.0 - v));
        break;
      case Domain::AmplitudeBound:
        if (std::fabs(v) >= p.mu) {
          throw ArgumentError("omega1 at boundary of open domain");
        }
        u[i] = std::atanh(v / p.mu);
        break;
      case Domain::Free: u[i] = v; break;
    }
  }
  return u;
}

}  // namespace sunsde
