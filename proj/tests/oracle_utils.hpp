#pragma once

// Closed-form oracles used by the test suites. Everything here integrates the
// scaled radial monomials (r/R)^p exactly from first principles, independent
// of the adaptive-quadrature path inside the library.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace oracle {

inline double angular(int n) { return n == 0 ? 2.0 * M_PI : M_PI; }

// int_disk grad((r/R)^p trig) . grad((r/R)^q trig)
inline double vol_grad(int n, int p, int q) {
  if (p + q == 0) return 0.0;
  return angular(n) * (static_cast<double>(p) * q + static_cast<double>(n) * n) / (p + q);
}

// int_disk D2((r/R)^p trig) : D2((r/R)^q trig), Hessian Frobenius product
inline double vol_hess(int n, int p, int q, double R) {
  const double cpart = static_cast<double>(p) * (p - 1) * q * (q - 1) +
                       (static_cast<double>(p) - n * n) * (static_cast<double>(q) - n * n);
  const double spart = (n == 0) ? 0.0
                                : 2.0 * n * n * (static_cast<double>(p) - 1) *
                                      (static_cast<double>(q) - 1);
  const double numer = angular(n) * cpart + M_PI * spart;
  if (numer == 0.0) return 0.0;
  return numer / ((p + q - 2) * R * R);
}

// d^j/dr^j (r/R)^p at r=R
inline double rad_deriv(int p, int j, double R) {
  double f = 1.0;
  for (int d = 0; d < j; ++d) f *= (p - d);
  return f / std::pow(R, j);
}

// int_{r=R} gamma_j((r/R)^p trig) gamma_j((r/R)^q trig)
inline double bdry(int n, int j, int p, int q, double R) {
  return angular(n) * R * rad_deriv(p, j, R) * rad_deriv(q, j, R);
}

struct ModePencil {
  Eigen::Matrix2d A;       // LHS form on {(r/R)^n, (r/R)^(n+2)}
  Eigen::Matrix2d B;       // selected trace form
  Eigen::Vector2d trace;   // gamma_ell radial factors
};

inline ModePencil mode_pencil_k2(int n, int ell, double beta_other, double R) {
  ModePencil m;
  const int pw[2] = {n, n + 2};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double vol = vol_hess(n, pw[a], pw[b], R);
      const double b0 = bdry(n, 0, pw[a], pw[b], R);
      const double b1 = bdry(n, 1, pw[a], pw[b], R);
      m.A(a, b) = vol + beta_other * (ell == 0 ? b1 : b0);
      m.B(a, b) = (ell == 0 ? b0 : b1);
    }
    m.trace(a) = rad_deriv(pw[a], ell, R);
  }
  return m;
}

// the single finite eigenvalue of the rank-one-RHS 2x2 pencil
inline double mode_eigenvalue_k2(int n, int ell, double beta_other, double R) {
  const ModePencil m = mode_pencil_k2(n, ell, beta_other, R);
  const Eigen::Vector2d v = m.trace.normalized();
  const Eigen::Vector2d w(-v.y(), v.x());
  const double aww = w.dot(m.A * w);
  const double avv = v.dot(m.A * v);
  const double avw = v.dot(m.A * w);
  const double b = v.dot(m.B * v);
  if (aww <= 1e-14 * m.A.cwiseAbs().maxCoeff()) return avv / b;
  return (avv - avw * avw / aww) / b;
}

// auxiliary eta for the constrained direction gamma_ell = 0
inline double mode_eigenvalue_aux(int n, int ell, int mdx, double R) {
  const int pw[2] = {n, n + 2};
  Eigen::Vector2d tr_ell(rad_deriv(pw[0], ell, R), rad_deriv(pw[1], ell, R));
  Eigen::Vector2d w(-tr_ell.y(), tr_ell.x());
  w.normalize();
  Eigen::Matrix2d V, Bm;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      V(a, b) = vol_hess(n, pw[a], pw[b], R);
      Bm(a, b) = bdry(n, mdx, pw[a], pw[b], R);
    }
  }
  return w.dot(V * w) / w.dot(Bm * w);
}

// partial sums of sum_{j<=N} w_j g_j^2 for generator-style checks
inline double partial_sum(const std::vector<double>& terms, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n && i < terms.size(); ++i) s += terms[i];
  return s;
}

}  // namespace oracle
