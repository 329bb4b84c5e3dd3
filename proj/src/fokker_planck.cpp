#include "sunsde/fokker_planck.hpp"

#include <algorithm>
#include <cmath>

#include "sunsde/errors.hpp"

namespace sunsde {

double DensityGrid::mass() const {
  double m = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    m += 0.5 * (pdf[i] + pdf[i - 1]) * (x[i] - x[i - 1]);
  }
  return m;
}

double DensityGrid::mean() const {
  double m = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    m += 0.5 * (pdf[i] * x[i] + pdf[i - 1] * x[i - 1]) * (x[i] - x[i - 1]);
  }
  return m / mass();
}

double DensityGrid::variance() const {
  const double mu = mean();
  double v = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double a = pdf[i - 1] * (x[i - 1] - mu) * (x[i - 1] - mu);
    const double b = pdf[i] * (x[i] - mu) * (x[i] - mu);
    v += 0.5 * (a + b) * (x[i] - x[i - 1]);
  }
  return v / mass();
}

double DensityGrid::cdf_at(double y) const {
  if (y <= x.front()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (y >= x[i]) {
      acc += 0.5 * (pdf[i] + pdf[i - 1]) * (x[i] - x[i - 1]);
    } else {
      const double t = (y - x[i - 1]) / (x[i] - x[i - 1]);
      const double py = pdf[i - 1] + t * (pdf[i] - pdf[i - 1]);
      acc += 0.5 * (pdf[i - 1] + py) * (y - x[i - 1]);
      break;
    }
  }
  return acc;
}

void DensityGrid::normalize() {
  const double m = mass();
  if (!(m > 0.0)) throw NumericalError("cannot normalize a zero-mass density");
  for (double& v : pdf) v /= m;
}

DensityGrid DensityGrid::point_mass(std::vector<double> support, double at, double t) {
  DensityGrid g;
  g.x = std::move(support);
  g.pdf.assign(g.x.size(), 0.0);
  g.time_h = t;
  std::size_t best = 0;
  for (std::size_t i = 1; i < g.x.size(); ++i) {
    if (std::fabs(g.x[i] - at) < std::fabs(g.x[best] - at)) best = i;
  }
  g.pdf[best] = 1.0;
  g.normalize();
  return g;
}

DensityGrid DensityGrid::gaussian(std::vector<double> support, double mean, double sd,
                                  double t) {
  DensityGrid g;
  g.x = std::move(support);
  g.pdf.resize(g.x.size());
  g.time_h = t;
  const double inv = 1.0 / (sd * std::sqrt(6.283185307179586));
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double u = (g.x[i] - mean) / sd;
    g.pdf[i] = inv * std::exp(-0.5 * u * u);
  }
  g.normalize();
  return g;
}

namespace {

struct Tridiag {
  std::vector<double> sub, diag, sup;
};

// Finite-volume discretization of L j = -d/dx (f j) + d^2/dx^2 (D j) with
// zero-flux boundaries: flux at the face between cells i and i+1 is
//   F_i = f(m_i) * j_face - [D_{i+1} j_{i+1} - D_i j_i] / (x_{i+1} - x_i),
// where j_face is the central average at low cell Peclet and the upwind value
// where advection dominates (hybrid scheme; keeps the advection second-order
// in the smooth core without losing stability in the boundary layers).
void assemble(const DriftField& f, const DiffusionField& D, const std::vector<double>& x,
              const std::vector<double>& w, double t, Tridiag& L) {
  const std::size_t m = x.size();
  L.sub.assign(m, 0.0);
  L.diag.assign(m, 0.0);
  L.sup.assign(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double mid = 0.5 * (x[i] + x[i + 1]);
    const double h = x[i + 1] - x[i];
    const double a = f(mid, t);
    const double d_lo = D(x[i], t) / h;
    const double d_hi = D(x[i + 1], t) / h;
    const double peclet = std::fabs(a) / std::max(0.5 * (d_lo + d_hi), 1e-300);
    double c_low, c_high;  // multiply j_i and j_{i+1} in F_i
    if (peclet <= 1.0) {
      c_low = 0.5 * a + d_lo;
      c_high = 0.5 * a - d_hi;
    } else {
      c_low = std::max(a, 0.0) + d_lo;
      c_high = std::min(a, 0.0) - d_hi;
    }
    // outgoing flux F_i for cell i
    L.diag[i] -= c_low / w[i];
    L.sup[i] -= c_high / w[i];
    // incoming flux F_i for cell i+1
    L.sub[i + 1] = c_low / w[i + 1];
    L.diag[i + 1] += c_high / w[i + 1];
  }
}

void thomas_solve(const std::vector<double>& sub, const std::vector<double>& diag,
                  const std::vector<double>& sup, std::vector<double>& rhs) {
  const std::size_t m = diag.size();
  std::vector<double> c(m), d(m);
  c[0] = sup[0] / diag[0];
  d[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < m; ++i) {
    const double denom = diag[i] - sub[i] * c[i - 1];
    c[i] = sup[i] / denom;
    d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
  }
  rhs[m - 1] = d[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) {
    rhs[i] = d[i] - c[i] * rhs[i + 1];
  }
}

std::vector<double> cell_widths(const std::vector<double>& x) {
  const std::size_t m = x.size();
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double left = i == 0 ? x[0] - 0.5 * (x[1] - x[0]) : 0.5 * (x[i - 1] + x[i]);
    const double right =
        i + 1 == m ? x[m - 1] + 0.5 * (x[m - 1] - x[m - 2]) : 0.5 * (x[i] + x[i + 1]);
    w[i] = right - left;
  }
  return w;
}

// Advective Courant check restricted to where the initial mass actually sits;
// the boundary layers of bounded models legitimately carry enormous drift over
// vanishing cells, but no mass ever lives there.
void check_resolution(const DriftField& f, const DensityGrid& init,
                      const std::vector<double>& w, double t0, double dt,
                      const FpOptions& opts) {
  if (init.x.size() < 16) {
    throw ConfigError("Fokker-Planck grid too coarse (" + std::to_string(init.x.size()) +
                      " points); refine the grid");
  }
  const double total = init.mass();
  double acc = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < init.x.size(); ++i) {
    acc += 0.5 * (init.pdf[i] + init.pdf[i + 1]) * (init.x[i + 1] - init.x[i]);
    const double q = acc / total;
    if (q < 0.005 || q > 0.995) continue;
    const double a = std::fabs(f(0.5 * (init.x[i] + init.x[i + 1]), t0));
    worst = std::max(worst, a * dt / std::min(w[i], w[i + 1]));
  }
  if (worst > opts.max_courant) {
    throw ConfigError("Fokker-Planck time step too large for the grid spacing "
                      "(advective Courant number " +
                      std::to_string(worst) + "); refine the grid or reduce dt");
  }
}

}  // namespace

DensityGrid fp_evolve(const DriftField& f, const DiffusionField& D, DensityGrid init,
                      double t0_h, double t1_h, const FpOptions& opts) {
  if (!(t1_h > t0_h)) throw ArgumentError("fp_evolve: t1 must exceed t0");
  const std::size_t m = init.x.size();
  if (m != init.pdf.size() || m < 2) throw ArgumentError("fp_evolve: malformed density grid");

  const std::vector<double> w = cell_widths(init.x);
  check_resolution(f, init, w, t0_h, opts.dt_hours, opts);

  std::vector<double> j = init.pdf;
  Tridiag l_old, l_new;
  std::vector<double> rhs(m), di(m), su(m), sb(m);

  double t = t0_h;
  int step_count = 0;
  while (t < t1_h - 1e-12) {
    const double dt = std::min(opts.dt_hours, t1_h - t);
    const double t_next = t + dt;
    // implicit-Euler startup suppresses the odd-even oscillation of pure
    // Crank-Nicolson on sharp initial data
    const double theta = step_count < opts.rannacher_steps ? 1.0 : 0.5;

    assemble(f, D, init.x, w, t, l_old);
    assemble(f, D, init.x, w, t_next, l_new);

    for (std::size_t i = 0; i < m; ++i) {
      rhs[i] = j[i] + (1.0 - theta) * dt *
                          (l_old.sub[i] * (i > 0 ? j[i - 1] : 0.0) + l_old.diag[i] * j[i] +
                           l_old.sup[i] * (i + 1 < m ? j[i + 1] : 0.0));
      sb[i] = -theta * dt * l_new.sub[i];
      di[i] = 1.0 - theta * dt * l_new.diag[i];
      su[i] = -theta * dt * l_new.sup[i];
    }
    thomas_solve(sb, di, su, rhs);
    j.swap(rhs);
    t = t_next;
    ++step_count;
  }

  DensityGrid out;
  out.x = std::move(init.x);
  out.pdf = std::move(j);
  out.time_h = t1_h;
  for (double& v : out.pdf) v = std::max(0.0, v);
  return out;
}

std::vector<double> model_support_grid(const TransformedModel& tm, const ParamVector& p,
                                       const FpOptions& opts) {
  if (!tm.base().x_bounded) {
    throw ArgumentError("model_support_grid: only bounded models have a canonical grid");
  }
  StateVec lo_x, hi_x;
  lo_x.n = hi_x.n = tm.state_dim();
  lo_x[0] = opts.bound_eps;
  hi_x[0] = 1.0 - opts.bound_eps;
  if (tm.state_dim() == 2) lo_x[1] = hi_x[1] = 0.0;
  const double z_lo = tm.forward(lo_x, p)[0];
  const double z_hi = tm.forward(hi_x, p)[0];

  std::vector<double> grid(static_cast<std::size_t>(opts.n_points));
  StateVec z = lo_x;
  for (int i = 0; i < opts.n_points; ++i) {
    const double zi = z_lo + (z_hi - z_lo) * i / (opts.n_points - 1);
    z[0] = zi;
    grid[static_cast<std::size_t>(i)] = tm.inverse(z, p)[0];
  }
  return grid;
}

DensityGrid fokker_planck_solve(const TransformedModel& tm, const ParamVector& p,
                                DensityGrid init, double t0_h, double t1_h,
                                const ExogenousByHour& exog, double a0,
                                const FpOptions& opts) {
  if (!(t1_h > t0_h)) throw ArgumentError("fokker_planck_solve: t1 must exceed t0");
  const double m0 = init.mass();
  if (!(m0 > 0.999 && m0 < 1.001)) {
    throw ArgumentError("fokker_planck_solve: initial density not normalized (mass " +
                        std::to_string(m0) + ")");
  }

  const ModelSpec& spec = tm.base();
  DensityGrid grid = std::move(init);
  double t = t0_h;
  int slot = 0;
  while (t < t1_h - 1e-12) {
    const double t_next = std::min(t1_h, t + 1.0);
    const ExogenousAt ex = exog(slot);
    const double t_mid = 0.5 * (t + t_next);
    const double rate =
        spec.state_dim == 2
            ? std::exp(p.mu_a + (a0 - p.mu_a) * std::exp(-p.theta_a * (t_mid - t0_h)))
            : p.theta;
    const double target = reversion_target(spec, ex, p);

    const DriftField f = [rate, target](double x, double) { return rate * (target - x); };
    const DiffusionField D = [&spec, &p](double x, double) {
      double g = 0.0;
      switch (spec.id) {
        case ModelId::M1:
        case ModelId::M2: g = p.sigma_x; break;
        case ModelId::M3: g = p.sigma_x * x; break;
        default: g = p.sigma_x * x * (1.0 - x); break;
      }
      return 0.5 * g * g;
    };

    grid = fp_evolve(f, D, std::move(grid), t, t_next, opts);
    t = t_next;
    ++slot;
  }
  return grid;
}

}  // namespace sunsde
