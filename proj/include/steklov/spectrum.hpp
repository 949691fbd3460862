#pragma once

#include <Eigen/Core>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "steklov/geometry.hpp"

namespace steklov {

enum class TrigParity { cosine, sine };

/// One term coeff * (r/R)^power * cos(n theta) (or sin) of a smooth field on a
/// disk of radius R. The scaled radial monomials keep magnitudes bounded for
/// high modes. Smoothness at the center requires power >= angular with
/// matching parity.
struct DiskModeTerm {
  int angular{0};
  TrigParity parity{TrigParity::cosine};
  int power{0};
  double coeff{0.0};
};

struct DiskField {
  double radius{1.0};
  std::vector<DiskModeTerm> terms;
};

using FemField = Eigen::VectorXd;
using Field = std::variant<DiskField, FemField>;

/// Which member of the multi-parameter Steklov family to solve: order k,
/// the selected trace index ell, and the positive weights on the remaining
/// boundary terms (all 1 unless set).
struct SteklovProblemSpec {
  int k{1};
  int ell{0};
  std::map<int, double> beta;  // j -> beta_j, j != ell; missing entries mean 1
  std::variant<DiskDomain, std::shared_ptr<const Mesh2D>> domain;

  double beta_or_default(int j) const {
    auto it = beta.find(j);
    return it == beta.end() ? 1.0 : it->second;
  }
  void validate() const;
};

struct MultiplicityGroup {
  int begin{0};
  int end{0};  // half-open
};

/// Backend access to eigenfunctions: inner products in the boundary-augmented
/// H^k product, linear combinations, and boundary traces at quadrature nodes.
class SpectrumBasis {
 public:
  virtual ~SpectrumBasis() = default;
  virtual int order() const = 0;
  virtual std::size_t size() const = 0;
  /// <u, u_j> in the H^k_boundary product (top-order volume term plus all traces).
  virtual double hk_inner(const Field& u, std::size_t j) const = 0;
  /// Sum of coeffs[j] * u_j.
  virtual Field combine(std::span<const double> coeffs) const = 0;
  /// gamma_m(u) sampled at the boundary quadrature nodes.
  virtual Eigen::VectorXd sample_trace(const Field& u, int m) const = 0;
  /// gamma_m(u_j) sampled at the boundary quadrature nodes.
  virtual Eigen::VectorXd eigen_trace(int m, std::size_t j) const = 0;
};

struct SpectrumDiagnostics {
  double hk_gram_deviation{0.0};     // max |Gram - I| of eigenvectors
  double l2_gram_deviation{0.0};     // max |Gram - I| of the normalized traces
  double weak_residual{0.0};         // max scaled |LHS u - sigma RHS u| over pairs
  int reduced_dimension{0};          // trace DOFs (fem) or modes swept (disk)
  std::vector<int> skipped_modes;    // disk modes with a singular trace form
};

/// Ordered eigenvalues with normalized eigenvectors and their boundary traces.
struct Spectrum {
  SteklovProblemSpec problem;
  std::vector<double> eigenvalues;  // nondecreasing, >= 0 after clamping
  std::vector<MultiplicityGroup> multiplicity_groups;
  std::shared_ptr<const BoundaryParam> boundary;
  std::shared_ptr<const SpectrumBasis> basis;
  std::string basis_id;
  SpectrumDiagnostics diagnostics;
  // set for auxiliary spectra: (ell, m) with gamma_ell pinned and eigenvalues
  // eta^{ell,m} weighting the gamma_m trace; problem.ell then equals m
  std::optional<std::pair<int, int>> auxiliary_indices;

  std::size_t size() const { return eigenvalues.size(); }

  /// gamma_m(u_j) at the boundary nodes (computed through the basis backend).
  Eigen::VectorXd trace(int m, std::size_t j) const;

  /// Normalized trace u-hat_j = sqrt(1 + sigma_j) * gamma_ell(u_j).
  Eigen::VectorXd normalized_trace(std::size_t j) const;

  /// Gram checks over the first n eigenpairs; throws nothing, reports deviations.
  SpectrumDiagnostics verify(std::size_t n) const;
};

/// Groups sorted eigenvalues that agree to the given relative tolerance.
std::vector<MultiplicityGroup> group_multiplicities(const std::vector<double>& eigenvalues,
                                                    double rel_tol = 1e-6);

/// Clamps eigenvalues in (-tol, tol)*scale to zero; throws InvariantViolation
/// for values below -tol*scale.
void clamp_small_eigenvalues(std::vector<double>& eigenvalues, double rel_tol = 1e-9);

}  // namespace steklov
