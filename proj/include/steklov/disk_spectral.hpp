#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steklov/quadrature.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

/// Radial polynomial sum c * (r/R)^p; the scaled monomials keep every
/// integrand O(1) regardless of the mode number or the disk radius.
struct RadialPoly {
  std::vector<std::pair<int, double>> terms;  // (power, coeff)
};

/// d^j/dr^j of the radial polynomial evaluated at r = R.
double radial_boundary_derivative(const RadialPoly& f, int order, double radius);

/// Volume form of order k between f(r)trig(n.theta) and g(r)trig(n.theta):
/// the Dirichlet integral for k=1, the Hessian Frobenius product for k=2.
/// Entries are evaluated by adaptive radial quadrature.
double disk_volume_form(int k, int n, const RadialPoly& f, const RadialPoly& g,
                        double radius, const QuadOptions& quad = {});

/// Boundary form of the j-th radial derivatives over the circle r = R.
double disk_boundary_form(int n, int j, const RadialPoly& f, const RadialPoly& g,
                          double radius);

/// The 2x2 mode matrices of the k=2 family on the basis {(r/R)^n, (r/R)^(n+2)}.
struct DiskModeForms {
  Eigen::Matrix2d volume;
  Eigen::Matrix2d b0;
  Eigen::Matrix2d b1;
  Eigen::Vector2d trace0;  // gamma_0 radial factors of the two basis functions
  Eigen::Vector2d trace1;  // gamma_1 radial factors
};
DiskModeForms disk_mode_forms(int n, double radius, const QuadOptions& quad = {});

struct DiskSolveOptions {
  int n_boundary_samples{0};  // 0 = picked from the largest angular mode
  QuadOptions quad{};
};

/// Harmonic Steklov spectrum of the disk via per-angular-mode reduction:
/// angular modes 0..n_modes, giving 2*n_modes + 1 eigenvalues.
Spectrum laplace_steklov_disk(double radius, int n_modes,
                              const DiskSolveOptions& opts = {});

/// Biharmonic member of the multi-parameter family on a disk. Sweeps angular
/// modes until n_eigs eigenvalues are certified below everything later modes
/// can contribute, then returns exactly n_eigs of them.
Spectrum biharmonic_steklov_disk(const SteklovProblemSpec& spec, int n_eigs,
                                 const DiskSolveOptions& opts = {});

/// Auxiliary spectrum (eigenvalues eta^{ell,m}) on the disk: the k=2 volume
/// form over the subspace with gamma_ell = 0, weighted by the gamma_m trace.
Spectrum disk_auxiliary_spectrum(double radius, int ell, int m, int n_eigs,
                                 const DiskSolveOptions& opts = {});

struct KernelCandidate {
  std::string name;
  double residual{0.0};       // LHS quadratic form relative to the H^k norm
  double trace_mass{0.0};     // RHS mass of the selected trace
  bool in_kernel{false};      // residual below 1e-10 with nonvanishing trace
};

struct KernelCheckResult {
  std::vector<KernelCandidate> candidates;        // every candidate with its residual
  std::vector<KernelCandidate> kernel;            // the residual < 1e-10 sublist
  std::optional<KernelCandidate> reference;       // u = 2 - |x|^2 when k=3, ell=1
};

/// Evaluates the LHS quadratic form of the order-k family at low-degree
/// polynomials on the disk of radius R: zero iff the candidate is a
/// zero-eigenvalue eigenfunction. Exact monomial integration in the volume,
/// trigonometric quadrature on the boundary.
KernelCheckResult polynomial_kernel_check(int k, int ell, double radius,
                                          const std::map<int, double>& beta = {});

}  // namespace steklov
