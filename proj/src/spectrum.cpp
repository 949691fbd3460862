#include "steklov/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "steklov/util.hpp"

namespace steklov {

void SteklovProblemSpec::validate() const {
  if (k < 1 || k > 4) throw std::invalid_argument("SteklovProblemSpec: k must be in 1..4");
  if (ell < 0 || ell > k - 1) throw std::invalid_argument("SteklovProblemSpec: need 0 <= ell <= k-1");
  for (const auto& [j, b] : beta) {
    if (j < 0 || j > k - 1 || j == ell) {
      throw std::invalid_argument("SteklovProblemSpec: beta index out of range");
    }
    if (!(b > 0.0)) throw std::invalid_argument("SteklovProblemSpec: beta weights must be positive");
  }
}

Eigen::VectorXd Spectrum::trace(int m, std::size_t j) const {
  if (!basis) throw std::invalid_argument("Spectrum::trace: no basis backend");
  if (m < 0 || m > problem.k - 1) throw std::invalid_argument("Spectrum::trace: m out of range");
  if (j >= size()) throw std::invalid_argument("Spectrum::trace: index out of range");
  return basis->eigen_trace(m, j);
}

Eigen::VectorXd Spectrum::normalized_trace(std::size_t j) const {
  return std::sqrt(1.0 + eigenvalues[j]) * trace(problem.ell, j);
}

SpectrumDiagnostics Spectrum::verify(std::size_t n) const {
  SpectrumDiagnostics d = diagnostics;
  n = std::min(n, size());
  if (n == 0 || !basis || !boundary) return d;
  // L2 Gram of the normalized traces via boundary quadrature
  Eigen::MatrixXd traces(boundary->n_nodes(), n);
  for (std::size_t j = 0; j < n; ++j) traces.col(j) = normalized_trace(j);
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(boundary->node_weights.data(),
                                                        boundary->node_weights.size());
  Eigen::MatrixXd gram = traces.transpose() * w.asDiagonal() * traces;
  gram -= Eigen::MatrixXd::Identity(n, n);
  d.l2_gram_deviation = gram.cwiseAbs().maxCoeff();
  // H^k_boundary Gram of the eigenfunctions
  Eigen::MatrixXd hk(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(size(), 0.0);
    e[j] = 1.0;
    const Field uj = basis->combine(e);
    for (std::size_t i = 0; i <= j; ++i) {
      hk(i, j) = basis->hk_inner(uj, i);
      hk(j, i) = hk(i, j);
    }
  }
  hk -= Eigen::MatrixXd::Identity(n, n);
  d.hk_gram_deviation = hk.cwiseAbs().maxCoeff();
  return d;
}

std::vector<MultiplicityGroup> group_multiplicities(const std::vector<double>& eigenvalues,
                                                    double rel_tol) {
  std::vector<MultiplicityGroup> groups;
  const int n = static_cast<int>(eigenvalues.size());
  int begin = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n ||
        eigenvalues[i] - eigenvalues[i - 1] > rel_tol * std::max(1.0, std::abs(eigenvalues[i]))) {
      groups.push_back({begin, i});
      begin = i;
    }
  }
  return groups;
}

void clamp_small_eigenvalues(std::vector<double>& eigenvalues, double rel_tol) {
  double scale = 1.0;
  for (double s : eigenvalues) scale = std::max(scale, std::abs(s));
  const double tol = rel_tol * scale;
  for (double& s : eigenvalues) {
    if (s < -tol) {
      throw InvariantViolation("spectrum: eigenvalue " + fmt17(s) +
                               " below the negative tolerance " + fmt17(-tol));
    }
    if (s < 0.0 || std::abs(s) < tol) s = std::max(s, 0.0);
    if (std::abs(s) < tol) s = 0.0;
  }
}

}  // namespace steklov
