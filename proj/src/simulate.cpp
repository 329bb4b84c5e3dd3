#include "sunsde/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "sunsde/errors.hpp"
#include "sunsde/rng.hpp"

namespace sunsde {

namespace {

double clamp_drift(double f, double cap) { return std::clamp(f, -cap, cap); }

}  // namespace

PathEnsemble simulate_paths(const ModelSpec& spec, const ParamVector& p, const StateVec& x0,
                            const std::vector<ExogenousAt>& exog_by_hour, double t1_hours,
                            std::size_t n_paths, std::uint64_t seed, const SimOptions& opts) {
  if (!(opts.step_hours > 0.0)) throw ArgumentError("simulate_paths: step must be > 0");
  if (t1_hours <= 0.0) throw ArgumentError("simulate_paths: horizon must be > 0");
  if (exog_by_hour.size() < static_cast<std::size_t>(std::ceil(t1_hours - 1e-12))) {
    throw ArgumentError("simulate_paths: not enough exogenous hour slots for the horizon");
  }
  check_state(spec, x0);
  validate_params(p, spec.id);

  const TransformedModel tm(spec);
  const StateVec z0 = tm.forward(x0, p);
  const StateVec gdiag = tm.diffusion_diag(p);
  const std::size_t n_hours = static_cast<std::size_t>(std::ceil(t1_hours - 1e-12));

  PathEnsemble ens;
  ens.n_paths = n_paths;
  ens.step_hours = opts.step_hours;
  ens.seed = seed;
  ens.terminal_x.resize(n_paths);
  if (spec.state_dim == 2) ens.terminal_a.resize(n_paths);
  if (opts.keep_trajectories) {
    ens.trajectories.assign(n_paths, std::vector<double>(n_hours + 1));
  }

  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t path = lo; path < hi; ++path) {
      Rng rng(seed, path);
      StateVec z = z0;
      if (opts.keep_trajectories) ens.trajectories[path][0] = x0[0];
      double t = 0.0;
      std::size_t hour = 0;
      while (t < t1_hours - 1e-12) {
        const ExogenousAt& ex = exog_by_hour[std::min(hour, exog_by_hour.size() - 1)];
        const double hour_end = std::min(t1_hours, static_cast<double>(hour + 1));
        while (t < hour_end - 1e-12) {
          const double dt = std::min(opts.step_hours, hour_end - t);
          const double sq = std::sqrt(dt);
          const StateVec f = tm.transformed_drift(z, ex, p);
          for (int c = 0; c < z.n; ++c) {
            z[c] += clamp_drift(f[c], opts.drift_clamp) * dt + gdiag[c] * sq * rng.normal();
          }
          t += dt;
        }
        ++hour;
        if (opts.keep_trajectories && hour <= n_hours) {
          ens.trajectories[path][hour] = clamp_state(spec, tm.inverse(z, p))[0];
        }
      }
      const StateVec x = clamp_state(spec, tm.inverse(z, p));
      ens.terminal_x[path] = x[0];
      if (spec.state_dim == 2) ens.terminal_a[path] = x[1];
    }
  };

  const int nt = std::max(1, std::min<int>(opts.threads, static_cast<int>(n_paths)));
  if (nt == 1) {
    run_range(0, n_paths);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_paths + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(n_paths, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return ens;
}

TransformedPathStats simulate_transformed_paths(const ModelSpec& spec, const ParamVector& p,
                                                double z0, const ExogenousAt& ex,
                                                double t1_hours, std::size_t n_paths,
                                                std::uint64_t seed, const SimOptions& opts) {
  const TransformedModel tm(spec);
  TransformedPathStats stats;
  stats.terminal_z.resize(n_paths);
  stats.quadratic_variation.assign(n_paths, 0.0);

  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t path = lo; path < hi; ++path) {
      Rng rng(seed, path);
      StateVec z;
      z.n = spec.state_dim;
      z[0] = z0;
      if (spec.state_dim == 2) z[1] = p.mu_a;
      double qv = 0.0;
      double t = 0.0;
      while (t < t1_hours - 1e-12) {
        const double dt = std::min(opts.step_hours, t1_hours - t);
        const double sq = std::sqrt(dt);
        const StateVec f = tm.transformed_drift(z, ex, p);
        const StateVec g = tm.diffusion_diag(p);
        const double dz = clamp_drift(f[0], opts.drift_clamp) * dt + g[0] * sq * rng.normal();
        z[0] += dz;
        qv += dz * dz;
        if (spec.state_dim == 2) {
          z[1] += f[1] * dt + g[1] * sq * rng.normal();
        }
        t += dt;
      }
      stats.terminal_z[path] = z[0];
      stats.quadratic_variation[path] = qv;
    }
  };

  const int nt = std::max(1, std::min<int>(opts.threads, static_cast<int>(n_paths)));
  if (nt == 1) {
    run_range(0, n_paths);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_paths + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(n_paths, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return stats;
}

}  // namespace sunsde
