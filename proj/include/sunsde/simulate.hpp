#pragma once

#include <cstdint>
#include <vector>

#include "sunsde/lamperti.hpp"

namespace sunsde {

struct SimOptions {
  double step_hours = 0.01;
  int threads = 2;
  bool keep_trajectories = false;  // store hourly states, not just terminal ones
  /// Cap on the transformed drift magnitude; unreachable for realistic
  /// parameters, prevents overflow in the extreme tails.
  double drift_clamp = 1e6;
};

/// Euler-Maruyama ensemble. States are reported in the original coordinates and
/// always lie inside the model's closed state space.
struct PathEnsemble {
  std::size_t n_paths = 0;
  double step_hours = 0.0;
  std::uint64_t seed = 0;
  /// Terminal X component per path.
  std::vector<double> terminal_x;
  /// Terminal A component per path (empty for one-state models).
  std::vector<double> terminal_a;
  /// Hourly X trajectories (n_paths rows of n_hours+1 values) when requested.
  std::vector<std::vector<double>> trajectories;
};

/// Simulates paths in the Lamperti-transformed coordinate (unit diffusion, so
/// mapped-back paths respect the (0,1) bounds by construction) with per-path
/// RNG streams derived from (seed, path index); results are identical for any
/// thread count. Exogenous inputs are held constant over each hour slot.
PathEnsemble simulate_paths(const ModelSpec& spec, const ParamVector& p, const StateVec& x0,
                            const std::vector<ExogenousAt>& exog_by_hour, double t1_hours,
                            std::size_t n_paths, std::uint64_t seed,
                            const SimOptions& opts = {});

/// Terminal transformed states and realized quadratic variation of the
/// transformed X path, for checking the unit-diffusion property.
struct TransformedPathStats {
  std::vector<double> terminal_z;
  std::vector<double> quadratic_variation;
};

TransformedPathStats simulate_transformed_paths(const ModelSpec& spec, const ParamVector& p,
                                                double z0, const ExogenousAt& ex,
                                                double t1_hours, std::size_t n_paths,
                                                std::uint64_t seed,
                                                const SimOptions& opts = {});

}  // namespace sunsde
