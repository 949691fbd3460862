#include "steklov/fem.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "steklov/log.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/util.hpp"

namespace steklov {

namespace {

using Triplet = Eigen::Triplet<double>;

// ---------------------------------------------------------------------------
// 1D cubic Hermite shape functions on [0, h], parameterized by t = x/h.
// which: 0 value@0, 1 slope@0, 2 value@h, 3 slope@h.

struct Herm1D {
  double v, d1, d2;  // value, d/dx, d2/dx2
};

Herm1D herm_eval(int which, double t, double h) {
  Herm1D r{};
  switch (which) {
    case 0:
      r.v = 1.0 - 3.0 * t * t + 2.0 * t * t * t;
      r.d1 = (-6.0 * t + 6.0 * t * t) / h;
      r.d2 = (-6.0 + 12.0 * t) / (h * h);
      break;
    case 1:
      r.v = h * (t - 2.0 * t * t + t * t * t);
      r.d1 = 1.0 - 4.0 * t + 3.0 * t * t;
      r.d2 = (-4.0 + 6.0 * t) / h;
      break;
    case 2:
      r.v = 3.0 * t * t - 2.0 * t * t * t;
      r.d1 = (6.0 * t - 6.0 * t * t) / h;
      r.d2 = (6.0 - 12.0 * t) / (h * h);
      break;
    default:
      r.v = h * (t * t * t - t * t);
      r.d1 = 3.0 * t * t - 2.0 * t;
      r.d2 = (6.0 * t - 2.0) / h;
      break;
  }
  return r;
}

// local BFS DOF c: bit0 = carries d/dx, bit1 = carries d/dy  (u, ux, uy, uxy)
int bfs_dof(int vertex, int c) { return 4 * vertex + c; }

void assemble_p1_stiffness(const Mesh2D& mesh, std::vector<Triplet>& trips) {
  for (const auto& cell : mesh.cells) {
    const Point2& a = mesh.vertices[cell[0]];
    const Point2& b = mesh.vertices[cell[1]];
    const Point2& c = mesh.vertices[cell[2]];
    const double area2 = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    const double area = 0.5 * area2;
    const Point2 e0 = c - b, e1 = a - c, e2 = b - a;
    const Point2 grads[3] = {Point2(-e0.y(), e0.x()) / area2, Point2(-e1.y(), e1.x()) / area2,
                             Point2(-e2.y(), e2.x()) / area2};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        trips.emplace_back(cell[i], cell[j], area * grads[i].dot(grads[j]));
      }
    }
  }
}

void assemble_bfs_bending(const Mesh2D& mesh, std::vector<Triplet>& trips) {
  const GaussRule& rule = gauss_rule(4);
  const int nq = 4;
  const int locx[4] = {0, 1, 1, 0};
  const int locy[4] = {0, 0, 1, 1};
  for (const auto& cell : mesh.cells) {
    const Point2& p00 = mesh.vertices[cell[0]];
    const Point2& p11 = mesh.vertices[cell[2]];
    const double hx = p11.x() - p00.x();
    const double hy = p11.y() - p00.y();
    Eigen::Matrix<double, 16, 16> ke;
    ke.setZero();
    for (int qx = 0; qx < nq; ++qx) {
      for (int qy = 0; qy < nq; ++qy) {
        const double tx = rule.nodes[qx], ty = rule.nodes[qy];
        const double w = rule.weights[qx] * rule.weights[qy] * hx * hy;
        double uxx[16], uxy[16], uyy[16];
        for (int v = 0; v < 4; ++v) {
          for (int c = 0; c < 4; ++c) {
            const int wx = 2 * locx[v] + ((c & 1) ? 1 : 0);
            const int wy = 2 * locy[v] + ((c & 2) ? 1 : 0);
            const Herm1D fx = herm_eval(wx, tx, hx);
            const Herm1D fy = herm_eval(wy, ty, hy);
            const int l = 4 * v + c;
            uxx[l] = fx.d2 * fy.v;
            uxy[l] = fx.d1 * fy.d1;
            uyy[l] = fx.v * fy.d2;
          }
        }
        for (int i = 0; i < 16; ++i) {
          for (int j = 0; j < 16; ++j) {
            ke(i, j) += w * (uxx[i] * uxx[j] + 2.0 * uxy[i] * uxy[j] + uyy[i] * uyy[j]);
          }
        }
      }
    }
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        trips.emplace_back(bfs_dof(cell[i / 4], i % 4), bfs_dof(cell[j / 4], j % 4), ke(i, j));
      }
    }
  }
}

/// gamma_m evaluated at the boundary quadrature nodes. On the axis-aligned
/// edges of a C1 mesh both traces are cubic Hermite functions of arclength
/// whose end data are plain nodal DOFs.
Eigen::SparseMatrix<double> trace_operator(const Mesh2D& mesh, const BoundaryParam& bp,
                                           int k, int m, int n_dofs) {
  std::vector<Triplet> trips;
  const auto& edges = mesh.boundary_edges;
  for (std::size_t i = 0; i < bp.n_nodes(); ++i) {
    const BoundaryEdge& e = edges[bp.node_edge[i]];
    const double s = (bp.node_arclengths[i] - e.offset) / e.length;
    const Point2 t = bp.node_tangents[i];
    const Point2 nu = bp.node_normals[i];
    const int row = static_cast<int>(i);
    if (k == 1) {
      trips.emplace_back(row, e.v0, 1.0 - s);
      trips.emplace_back(row, e.v1, s);
      continue;
    }
    const Herm1D h0v = herm_eval(0, s, e.length);
    const Herm1D h0d = herm_eval(1, s, e.length);
    const Herm1D h1v = herm_eval(2, s, e.length);
    const Herm1D h1d = herm_eval(3, s, e.length);
    if (m == 0) {
      trips.emplace_back(row, bfs_dof(e.v0, 0), h0v.v);
      trips.emplace_back(row, bfs_dof(e.v0, 1), h0d.v * t.x());
      trips.emplace_back(row, bfs_dof(e.v0, 2), h0d.v * t.y());
      trips.emplace_back(row, bfs_dof(e.v1, 0), h1v.v);
      trips.emplace_back(row, bfs_dof(e.v1, 1), h1d.v * t.x());
      trips.emplace_back(row, bfs_dof(e.v1, 2), h1d.v * t.y());
    } else {
      const double mixed = t.x() * nu.y() + t.y() * nu.x();
      trips.emplace_back(row, bfs_dof(e.v0, 1), h0v.v * nu.x());
      trips.emplace_back(row, bfs_dof(e.v0, 2), h0v.v * nu.y());
      trips.emplace_back(row, bfs_dof(e.v0, 3), h0d.v * mixed);
      trips.emplace_back(row, bfs_dof(e.v1, 1), h1v.v * nu.x());
      trips.emplace_back(row, bfs_dof(e.v1, 2), h1v.v * nu.y());
      trips.emplace_back(row, bfs_dof(e.v1, 3), h1d.v * mixed);
    }
  }
  Eigen::SparseMatrix<double> T(static_cast<int>(bp.n_nodes()), n_dofs);
  T.setFromTriplets(trips.begin(), trips.end());
  T.prune(1e-300);
  return T;
}

std::vector<int> nonzero_columns(const Eigen::SparseMatrix<double>& T) {
  std::set<int> cols;
  for (int k = 0; k < T.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(T, k); it; ++it) {
      if (it.value() != 0.0) cols.insert(static_cast<int>(it.col()));
    }
  }
  return {cols.begin(), cols.end()};
}

Eigen::SparseMatrix<double> weighted_gram(const Eigen::SparseMatrix<double>& T,
                                          const std::vector<double>& weights) {
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(weights.data(),
                                                        static_cast<Eigen::Index>(weights.size()));
  Eigen::SparseMatrix<double> B = T.transpose() * w.asDiagonal() * T;
  B.prune(1e-300);
  return B;
}

AssembledForms assemble_impl(const MeshGeometry& geom, const SteklovProblemSpec& spec,
                             bool auxiliary, int aux_ell, int aux_m) {
  const Mesh2D& mesh = *geom.mesh;
  const int k = spec.k;
  if (k == 1 && mesh.element_type != ElementType::p1_triangle) {
    throw std::invalid_argument("assemble: k=1 requires a P1 triangle mesh");
  }
  if (k == 2 && mesh.element_type != ElementType::c1_rectangle) {
    throw std::invalid_argument("assemble: k=2 requires a C1 rectangle mesh");
  }
  if (k > 2) throw std::invalid_argument("assemble: FEM supports k = 1, 2 only");
  AssembledForms forms;
  forms.mesh = geom.mesh;
  forms.boundary = geom.boundary;
  forms.problem = spec;
  forms.n_dofs = (k == 1) ? static_cast<int>(mesh.n_vertices())
                          : 4 * static_cast<int>(mesh.n_vertices());

  std::vector<Triplet> vol_trips;
  if (k == 1) {
    assemble_p1_stiffness(mesh, vol_trips);
  } else {
    assemble_bfs_bending(mesh, vol_trips);
  }
  forms.volume.resize(forms.n_dofs, forms.n_dofs);
  forms.volume.setFromTriplets(vol_trips.begin(), vol_trips.end());
  forms.volume.prune(1e-300);

  for (int m = 0; m < k; ++m) {
    forms.trace_ops.push_back(trace_operator(mesh, *geom.boundary, k, m, forms.n_dofs));
    forms.boundary_mass.push_back(
        weighted_gram(forms.trace_ops.back(), geom.boundary->node_weights));
  }

  if (!auxiliary) {
    const int ell = spec.ell;
    forms.lhs = forms.volume;
    for (int j = 0; j < k; ++j) {
      if (j == ell) continue;
      forms.lhs += spec.beta_or_default(j) * forms.boundary_mass[j];
    }
    forms.rhs = forms.boundary_mass[ell];
    forms.rhs_support = nonzero_columns(forms.trace_ops[ell]);
  } else {
    forms.lhs = forms.volume;
    forms.rhs = forms.boundary_mass[aux_m];
    forms.rhs_support = nonzero_columns(forms.trace_ops[aux_m]);
    forms.constraint_set = nonzero_columns(forms.trace_ops[aux_ell]);
    forms.auxiliary_indices = {{aux_ell, aux_m}};
  }
  return forms;
}

class FemBasis final : public SpectrumBasis {
 public:
  FemBasis(int k, Eigen::SparseMatrix<double> gram, Eigen::MatrixXd eigvecs,
           std::vector<Eigen::SparseMatrix<double>> trace_ops)
      : k_(k),
        gram_(std::move(gram)),
        eigvecs_(std::move(eigvecs)),
        trace_ops_(std::move(trace_ops)) {}

  int order() const override { return k_; }
  std::size_t size() const override { return static_cast<std::size_t>(eigvecs_.cols()); }

  double hk_inner(const Field& u, std::size_t j) const override {
    const auto* fu = std::get_if<FemField>(&u);
    if (fu == nullptr) throw std::invalid_argument("fem basis: field is not a DOF vector");
    if (fu->size() != eigvecs_.rows()) {
      throw std::invalid_argument("fem basis: DOF vector size mismatch");
    }
    return fu->dot(gram_ * eigvecs_.col(static_cast<int>(j)));
  }

  Field combine(std::span<const double> coeffs) const override {
    if (coeffs.size() > size()) {
      throw std::invalid_argument("fem basis: more coefficients than eigenvectors");
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(eigvecs_.rows());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] != 0.0) out += coeffs[j] * eigvecs_.col(static_cast<int>(j));
    }
    return out;
  }

  Eigen::VectorXd sample_trace(const Field& u, int m) const override {
    const auto* fu = std::get_if<FemField>(&u);
    if (fu == nullptr) throw std::invalid_argument("fem basis: field is not a DOF vector");
    return trace_ops_.at(static_cast<std::size_t>(m)) * (*fu);
  }

  Eigen::VectorXd eigen_trace(int m, std::size_t j) const override {
    return trace_ops_.at(static_cast<std::size_t>(m)) * eigvecs_.col(static_cast<int>(j));
  }

 private:
  int k_;
  Eigen::SparseMatrix<double> gram_;
  Eigen::MatrixXd eigvecs_;
  std::vector<Eigen::SparseMatrix<double>> trace_ops_;
};

Eigen::SparseMatrix<double> selector(const std::vector<int>& ids, int n) {
  Eigen::SparseMatrix<double> P(n, static_cast<int>(ids.size()));
  std::vector<Triplet> trips;
  for (std::size_t c = 0; c < ids.size(); ++c) {
    trips.emplace_back(ids[c], static_cast<int>(c), 1.0);
  }
  P.setFromTriplets(trips.begin(), trips.end());
  return P;
}

}  // namespace

AssembledForms assemble(const SteklovProblemSpec& spec, const MeshGeometry& geom) {
  spec.validate();
  SteklovProblemSpec bound = spec;
  bound.domain = geom.mesh;
  return assemble_impl(geom, bound, false, -1, -1);
}

AssembledForms assemble_auxiliary(const MeshGeometry& geom, int ell, int m) {
  if (ell < 0 || ell > 1 || m < 0 || m > 1 || ell == m) {
    throw std::invalid_argument("assemble_auxiliary: need ell, m in {0,1}, ell != m");
  }
  SteklovProblemSpec spec;
  spec.k = 2;
  spec.ell = m;  // the normalized traces of an auxiliary spectrum use gamma_m
  spec.domain = geom.mesh;
  return assemble_impl(geom, spec, true, ell, m);
}

ReducedEigenproblem reduce(const AssembledForms& forms) {
  const int n = forms.n_dofs;
  std::vector<char> pinned(n, 0);
  for (int d : forms.constraint_set) pinned[d] = 1;
  std::vector<int> support;
  for (int d : forms.rhs_support) {
    if (!pinned[d]) support.push_back(d);
  }
  std::vector<char> in_support(n, 0);
  for (int d : support) in_support[d] = 1;
  std::vector<int> interior;
  for (int d = 0; d < n; ++d) {
    if (!pinned[d] && !in_support[d]) interior.push_back(d);
  }

  const Eigen::SparseMatrix<double> Pb = selector(support, n);
  const Eigen::SparseMatrix<double> Pi = selector(interior, n);
  const Eigen::SparseMatrix<double> Abb = Pb.transpose() * forms.lhs * Pb;
  const Eigen::SparseMatrix<double> Aib = Pi.transpose() * forms.lhs * Pb;
  const Eigen::SparseMatrix<double> Aii = Pi.transpose() * forms.lhs * Pi;

  ReducedEigenproblem red;
  red.support = support;
  red.forms = std::make_shared<AssembledForms>(forms);

  Eigen::MatrixXd X(interior.size(), support.size());
  if (!interior.empty()) {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(Aii);
    if (llt.info() != Eigen::Success) {
      throw SolverError(
          "reduce: interior lhs block is not positive definite; a generalized kernel "
          "direction survives outside rhs_support (constants for ell=0, k=2 belong on "
          "the trace side)");
    }
    X = llt.solve(Eigen::MatrixXd(Aib));
  }
  red.schur = Eigen::MatrixXd(Abb) - Eigen::MatrixXd(Aib).transpose() * X;
  red.schur = 0.5 * (red.schur + red.schur.transpose()).eval();
  red.mass = Eigen::MatrixXd(Pb.transpose() * forms.rhs * Pb);
  red.mass = 0.5 * (red.mass + red.mass.transpose()).eval();

  Eigen::LLT<Eigen::MatrixXd> mass_llt(red.mass);
  if (mass_llt.info() != Eigen::Success) {
    throw SolverError("reduce: boundary mass restricted to rhs_support is not SPD");
  }

  red.recovery = Eigen::MatrixXd::Zero(n, static_cast<int>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    red.recovery(support[c], static_cast<int>(c)) = 1.0;
  }
  for (std::size_t r = 0; r < interior.size(); ++r) {
    red.recovery.row(interior[r]) = -X.row(static_cast<int>(r));
  }
  return red;
}

Spectrum solve_reduced(const ReducedEigenproblem& red, int n_eigs) {
  const int dim = static_cast<int>(red.support.size());
  if (n_eigs < 1 || n_eigs > dim) {
    throw std::invalid_argument("solve_reduced: n_eigs must be in 1..reduced dimension");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(red.schur, red.mass);
  if (eig.info() != Eigen::Success) {
    throw SolverError("solve_reduced: generalized eigendecomposition failed");
  }
  const AssembledForms& forms = *red.forms;
  const int k = forms.problem.k;
  const int ell = forms.problem.ell;

  Spectrum spec;
  spec.problem = forms.problem;
  spec.auxiliary_indices = forms.auxiliary_indices;
  spec.boundary = forms.boundary;
  spec.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + n_eigs);
  clamp_small_eigenvalues(spec.eigenvalues);
  spec.multiplicity_groups = group_multiplicities(spec.eigenvalues);

  Eigen::SparseMatrix<double> gram = forms.volume;
  for (const auto& B : forms.boundary_mass) gram += B;

  spec.diagnostics.reduced_dimension = dim;
  const double res_scale = red.schur.cwiseAbs().maxCoeff() + red.mass.cwiseAbs().maxCoeff();
  Eigen::MatrixXd vecs(forms.n_dofs, n_eigs);
  for (int j = 0; j < n_eigs; ++j) {
    const Eigen::VectorXd y = eig.eigenvectors().col(j);
    const double res =
        (red.schur * y - eig.eigenvalues()[j] * (red.mass * y)).cwiseAbs().maxCoeff();
    spec.diagnostics.weak_residual =
        std::max(spec.diagnostics.weak_residual, res / std::max(1.0, res_scale));
    Eigen::VectorXd full = red.recovery * y;
    const double norm_sq = full.dot(gram * full);
    if (!(norm_sq > 0.0)) throw SolverError("solve_reduced: eigenvector with vanishing norm");
    full /= std::sqrt(norm_sq);
    const Eigen::VectorXd tr = forms.trace_ops[ell] * full;
    for (int i = 0; i < tr.size(); ++i) {
      if (std::abs(tr[i]) > 1e-10) {
        if (tr[i] < 0.0) full = -full;
        break;
      }
    }
    vecs.col(j) = full;
  }

  spec.basis = std::make_shared<FemBasis>(k, std::move(gram), std::move(vecs), forms.trace_ops);
  std::ostringstream id;
  id << "fem-k" << k << "-l" << ell;
  if (forms.auxiliary_indices) {
    id << "-aux" << forms.auxiliary_indices->first << forms.auxiliary_indices->second;
  }
  id << "-v" << forms.mesh->n_vertices() << "-c" << forms.mesh->n_cells() << "-"
     << (forms.mesh->element_type == ElementType::p1_triangle ? "p1" : "c1") << "-n" << n_eigs;
  spec.basis_id = id.str();
  return spec;
}

Spectrum steklov_fem(const SteklovProblemSpec& spec, const MeshGeometry& geom, int n_eigs) {
  return solve_reduced(reduce(assemble(spec, geom)), n_eigs);
}

Spectrum solve_auxiliary_fem(const MeshGeometry& geom, int ell, int m, int n_eigs) {
  return solve_reduced(reduce(assemble_auxiliary(geom, ell, m)), n_eigs);
}

double mesh_diameter(const Mesh2D& mesh) {
  double h = 0.0;
  for (const auto& cell : mesh.cells) {
    for (std::size_t i = 0; i < cell.size(); ++i) {
      for (std::size_t j = i + 1; j < cell.size(); ++j) {
        h = std::max(h, (mesh.vertices[cell[i]] - mesh.vertices[cell[j]]).norm());
      }
    }
  }
  return h;
}

ConvergenceStudy convergence_study(const SteklovProblemSpec& spec,
                                   const std::vector<MeshGeometry>& mesh_family, int n_eigs) {
  if (mesh_family.size() < 3) {
    throw std::invalid_argument("convergence_study: need at least three refinement levels");
  }
  ConvergenceStudy study;
  for (const auto& geom : mesh_family) {
    ConvergenceRow row;
    row.h = mesh_diameter(*geom.mesh);
    row.sigma = steklov_fem(spec, geom, n_eigs).eigenvalues;
    study.rows.push_back(std::move(row));
  }
  const std::size_t levels = study.rows.size();
  study.estimated_order.assign(n_eigs, std::numeric_limits<double>::quiet_NaN());
  study.monotone.assign(n_eigs, true);
  for (int j = 0; j < n_eigs; ++j) {
    for (std::size_t l = 1; l < levels; ++l) {
      if (study.rows[l].sigma[j] > study.rows[l - 1].sigma[j] + 1e-12) {
        study.monotone[j] = false;
        log::info("convergence_study: eigenvalue %d not monotone at level %zu", j, l);
      }
    }
    const double d1 = study.rows[levels - 2].sigma[j] - study.rows[levels - 3].sigma[j];
    const double d2 = study.rows[levels - 1].sigma[j] - study.rows[levels - 2].sigma[j];
    const double ratio = study.rows[levels - 3].h / study.rows[levels - 2].h;
    if (std::abs(d2) > 1e-14 * std::max(1.0, std::abs(study.rows[levels - 1].sigma[j])) &&
        ratio > 1.0) {
      study.estimated_order[j] = std::log(std::abs(d1 / d2)) / std::log(ratio);
    }
  }
  return study;
}

}  // namespace steklov
