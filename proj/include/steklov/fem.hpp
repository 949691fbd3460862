#pragma once

#include <Eigen/Sparse>
#include <memory>
#include <vector>

#include "steklov/spectrum.hpp"

namespace steklov {

/// Assembled bilinear forms of one member of the Steklov family on a mesh.
/// P1 triangles discretize k=1; bicubic Hermite (Bogner-Fox-Schmit) rectangles
/// discretize k=2 with DOFs (u, u_x, u_y, u_xy) per node.
struct AssembledForms {
  Eigen::SparseMatrix<double> lhs;  // volume + sum_{j != ell} beta_j * boundary_j
  Eigen::SparseMatrix<double> rhs;  // boundary mass of the selected trace
  std::vector<int> rhs_support;     // DOFs the rhs acts on
  std::vector<int> constraint_set;  // DOFs pinned to zero (auxiliary problems)

  Eigen::SparseMatrix<double> volume;
  std::vector<Eigen::SparseMatrix<double>> boundary_mass;  // per trace order
  // gamma_m sampled at the boundary quadrature nodes; boundary_mass[m] equals
  // trace_ops[m]^T * diag(weights) * trace_ops[m]
  std::vector<Eigen::SparseMatrix<double>> trace_ops;

  std::shared_ptr<const Mesh2D> mesh;
  std::shared_ptr<const BoundaryParam> boundary;
  SteklovProblemSpec problem;
  std::optional<std::pair<int, int>> auxiliary_indices;
  int n_dofs{0};
};

AssembledForms assemble(const SteklovProblemSpec& spec, const MeshGeometry& geom);

/// Auxiliary family: pure bending form with gamma_ell trace DOFs pinned and
/// the gamma_m trace mass on the right-hand side.
AssembledForms assemble_auxiliary(const MeshGeometry& geom, int ell, int m);

/// Dense symmetric-definite problem on the rhs support after eliminating the
/// interior block: S = A_bb - A_bi A_ii^{-1} A_ib. Infinite eigenvalues of the
/// (lhs, rhs) pencil never materialize.
struct ReducedEigenproblem {
  Eigen::MatrixXd schur;
  Eigen::MatrixXd mass;
  Eigen::MatrixXd recovery;    // n_dofs x n_support, maps reduced to full vectors
  std::vector<int> support;    // global DOF ids of the reduced coordinates
  std::shared_ptr<const AssembledForms> forms;
};

ReducedEigenproblem reduce(const AssembledForms& forms);

Spectrum solve_reduced(const ReducedEigenproblem& red, int n_eigs);

/// assemble + reduce + solve in one call.
Spectrum steklov_fem(const SteklovProblemSpec& spec, const MeshGeometry& geom, int n_eigs);

Spectrum solve_auxiliary_fem(const MeshGeometry& geom, int ell, int m, int n_eigs);

struct ConvergenceRow {
  double h{0.0};
  std::vector<double> sigma;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  std::vector<double> estimated_order;  // Richardson estimate from the last three levels
  std::vector<bool> monotone;           // eigenvalue decreased at every refinement
};

/// Eigenvalue convergence over a family of nested refinements.
ConvergenceStudy convergence_study(const SteklovProblemSpec& spec,
                                   const std::vector<MeshGeometry>& mesh_family, int n_eigs);

double mesh_diameter(const Mesh2D& mesh);

}  // namespace steklov
