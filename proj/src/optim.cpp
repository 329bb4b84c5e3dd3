#include "sunsde/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace sunsde {

namespace {

constexpr double kHuge = 1e100;

double guarded(const Objective& f, const std::vector<double>& x, int& evals) {
  ++evals;
  const double v = f(x);
  return std::isfinite(v) ? v : kHuge;
}

}  // namespace

OptimResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                        const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  OptimResult res;
  res.x = x0;
  if (n == 0) return res;

  // Gao-Han adaptive coefficients.
  const double nd = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / nd;
  const double gamma = 0.75 - 1.0 / (2.0 * nd);
  const double delta = 1.0 - 1.0 / nd;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    simplex[i + 1][i] += opts.initial_step * std::max(1.0, std::fabs(x0[i]));
  }
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = guarded(f, simplex[i], res.evaluations);

  std::vector<std::size_t> order(n + 1);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    ++res.iterations;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];

    if (fv[worst] - fv[best] < opts.f_tol_abs && fv[best] < kHuge) {
      res.converged = true;
      res.x = simplex[best];
      res.f = fv[best];
      return res;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= nd;

    auto blend = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + t * (centroid[j] - simplex[worst][j]);
      return x;
    };

    const std::vector<double> xr = blend(alpha);
    const double fr = guarded(f, xr, res.evaluations);
    if (fr < fv[best]) {
      const std::vector<double> xe = blend(beta);
      const double fe = guarded(f, xe, res.evaluations);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
    } else {
      // contraction: outside when the reflection helped at all, inside otherwise
      const bool outside = fr < fv[worst];
      const std::vector<double> xc = blend(outside ? gamma : -gamma);
      const double fc = guarded(f, xc, res.evaluations);
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = xc;
        fv[worst] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j) {
            simplex[i][j] = simplex[best][j] + delta * (simplex[i][j] - simplex[best][j]);
          }
          fv[i] = guarded(f, simplex[i], res.evaluations);
        }
      }
    }
  }

  const std::size_t best = static_cast<std::size_t>(
      std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = simplex[best];
  res.f = fv[best];
  res.converged = false;
  return res;
}

namespace {

std::vector<double> central_gradient(const Objective& f, const std::vector<double>& x,
                                     double step, int threads, int& evals) {
  const std::size_t n = x.size();
  std::vector<double> g(n, 0.0);
  std::vector<double> fplus(n), fminus(n);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = step * std::max(1.0, std::fabs(x[i]));

  auto eval_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      std::vector<double> xp = x, xm = x;
      xp[i] += h[i];
      xm[i] -= h[i];
      const double vp = f(xp);
      const double vm = f(xm);
      fplus[i] = std::isfinite(vp) ? vp : kHuge;
      fminus[i] = std::isfinite(vm) ? vm : kHuge;
    }
  };

  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (nt == 1) {
    eval_range(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(eval_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  evals += static_cast<int>(2 * n);
  for (std::size_t i = 0; i < n; ++i) g[i] = (fplus[i] - fminus[i]) / (2.0 * h[i]);
  return g;
}

}  // namespace

OptimResult bfgs_polish(const Objective& f, const std::vector<double>& x0,
                        const BfgsOptions& opts) {
  const std::size_t n = x0.size();
  OptimResult res;
  res.x = x0;
  res.f = guarded(f, x0, res.evaluations);
  if (n == 0) return res;

  // Inverse-Hessian approximation, dense row-major.
  std::vector<double> hinv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;

  std::vector<double> x = x0;
  double fx = res.f;
  std::vector<double> g = central_gradient(f, x, opts.grad_step, opts.threads,
                                           res.evaluations);

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    ++res.iterations;

    std::vector<double> dir(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dir[i] -= hinv[i * n + j] * g[j];

    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) slope += dir[i] * g[i];
    if (!(slope < 0.0)) {
      // reset to steepest descent when the approximation degenerates
      std::fill(hinv.begin(), hinv.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;
      slope = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dir[i] = -g[i];
        slope += dir[i] * g[i];
      }
      if (!(slope < 0.0)) {
        res.converged = true;  // zero gradient
        break;
      }
    }

    // Backtracking Armijo line search.
    double step = 1.0;
    double f_new = kHuge;
    std::vector<double> x_new(n);
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * dir[i];
      f_new = guarded(f, x_new, res.evaluations);
      if (f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    std::vector<double> g_new = central_gradient(f, x_new, opts.grad_step, opts.threads,
                                                 res.evaluations);
    std::vector<double> s(n), yv(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - x[i];
      yv[i] = g_new[i] - g[i];
    }
    double sy = 0.0, ss = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sy += s[i] * yv[i];
      ss += s[i] * s[i];
      yy += yv[i] * yv[i];
    }
    const double f_prev = fx;
    x = x_new;
    fx = f_new;
    g = g_new;

    if (sy > 1e-10 * std::sqrt(ss * yy)) {
      // BFGS inverse update: H <- (I - r s y')H(I - r y s') + r s s'
      const double rho = 1.0 / sy;
      std::vector<double> hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) hy[i] += hinv[i * n + j] * yv[j];
      double yhy = 0.0;
      for (std::size_t i = 0; i < n; ++i) yhy += yv[i] * hy[i];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          hinv[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) +
                             rho * (1.0 + rho * yhy) * s[i] * s[j];
        }
      }
    }

    if (std::fabs(f_prev - fx) < opts.f_tol_abs) {
      res.converged = true;
      break;
    }
  }

  res.x = x;
  res.f = fx;
  return res;
}

}  // namespace sunsde
