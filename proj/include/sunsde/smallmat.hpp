#pragma once

#include <array>
#include <cmath>

namespace sunsde {

// Fixed-capacity vector/matrix for state dimensions 1 and 2. The filter and the
// moment ODEs never need anything larger, so this stays allocation-free.

struct StateVec {
  int n = 1;
  std::array<double, 2> v{0.0, 0.0};

  StateVec() = default;
  explicit StateVec(double x) : n(1), v{x, 0.0} {}
  StateVec(double x, double a) : n(2), v{x, a} {}

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

struct StateMat {
  int n = 1;
  std::array<double, 4> m{0.0, 0.0, 0.0, 0.0};  // row-major

  static StateMat zero(int n) {
    StateMat r;
    r.n = n;
    return r;
  }
  static StateMat diag(int n, double d0, double d1 = 0.0) {
    StateMat r = zero(n);
    r(0, 0) = d0;
    if (n > 1) r(1, 1) = d1;
    return r;
  }
  static StateMat identity(int n) { return diag(n, 1.0, 1.0); }

  double& operator()(int i, int j) { return m[static_cast<std::size_t>(i * 2 + j)]; }
  double operator()(int i, int j) const { return m[static_cast<std::size_t>(i * 2 + j)]; }
};

inline StateVec operator+(const StateVec& a, const StateVec& b) {
  StateVec r = a;
  for (int i = 0; i < a.n; ++i) r[i] += b[i];
  return r;
}

inline StateVec operator*(double s, const StateVec& a) {
  StateVec r = a;
  for (int i = 0; i < a.n; ++i) r[i] *= s;
  return r;
}

inline StateMat operator+(const StateMat& a, const StateMat& b) {
  StateMat r = a;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r(i, j) += b(i, j);
  return r;
}

inline StateMat operator*(double s, const StateMat& a) {
  StateMat r = a;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r(i, j) *= s;
  return r;
}

inline StateMat matmul(const StateMat& a, const StateMat& b) {
  StateMat r = StateMat::zero(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      for (int k = 0; k < a.n; ++k) r(i, j) += a(i, k) * b(k, j);
  return r;
}

inline StateMat transpose(const StateMat& a) {
  StateMat r = a;
  if (a.n == 2) {
    r(0, 1) = a(1, 0);
    r(1, 0) = a(0, 1);
  }
  return r;
}

inline void symmetrize(StateMat& a) {
  if (a.n == 2) {
    const double off = 0.5 * (a(0, 1) + a(1, 0));
    a(0, 1) = off;
    a(1, 0) = off;
  }
}

/// Smallest eigenvalue of a symmetric 1x1 or 2x2 matrix.
inline double min_eigenvalue(const StateMat& a) {
  if (a.n == 1) return a(0, 0);
  const double tr = a(0, 0) + a(1, 1);
  const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const double disc = std::sqrt(std::fmax(0.0, tr * tr / 4.0 - det));
  return tr / 2.0 - disc;
}

}  // namespace sunsde
