#pragma once

#include <functional>
#include <vector>

namespace sunsde {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  int max_iterations = 2000;
  double f_tol_abs = 1e-7;     // stop when the simplex f-spread falls below this
  double initial_step = 0.3;   // per-coordinate simplex offset
};

/// Derivative-free simplex minimization with dimension-adaptive coefficients.
/// Non-finite objective values are treated as +inf.
OptimResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                        const NelderMeadOptions& opts = {});

struct BfgsOptions {
  int max_iterations = 200;
  double f_tol_abs = 1e-6;   // stop when successive accepted values change less
  double grad_step = 1e-5;   // central-difference step, scaled by max(1, |x_i|)
  int threads = 1;           // parallel finite-difference evaluations
};

/// Quasi-Newton polish using central finite-difference gradients and a
/// backtracking Armijo line search.
OptimResult bfgs_polish(const Objective& f, const std::vector<double>& x0,
                        const BfgsOptions& opts = {});

}  // namespace sunsde
