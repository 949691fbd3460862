#include "steklov/disk_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "steklov/log.hpp"
#include "steklov/util.hpp"

namespace steklov {

namespace {

double angular_factor(int n) { return n == 0 ? 2.0 * M_PI : M_PI; }

// f = sum c (r/R)^p evaluated at t = r/R with an extra 1/R^order per derivative.
double eval_deriv(const RadialPoly& f, double t, int order, double radius) {
  double acc = 0.0;
  for (const auto& [p, c] : f.terms) {
    if (c == 0.0) continue;
    double factor = c;
    for (int d = 0; d < order; ++d) factor *= (p - d);
    if (factor == 0.0) continue;
    acc += factor * std::pow(t, p - order);
  }
  return acc / std::pow(radius, order);
}

// f'/r - f/r^2 = (1/R^2) sum c (p-1) t^{p-2}
double eval_mixed(const RadialPoly& f, double t, double radius) {
  double acc = 0.0;
  for (const auto& [p, c] : f.terms) {
    const double factor = c * (p - 1);
    if (factor == 0.0) continue;
    acc += factor * std::pow(t, p - 2);
  }
  return acc / (radius * radius);
}

// f'/r - n^2 f/r^2 = (1/R^2) sum c (p - n^2) t^{p-2}
double eval_theta(const RadialPoly& f, double t, int n, double radius) {
  double acc = 0.0;
  for (const auto& [p, c] : f.terms) {
    const double factor = c * (p - n * n);
    if (factor == 0.0) continue;
    acc += factor * std::pow(t, p - 2);
  }
  return acc / (radius * radius);
}

// f/r = (1/R) sum c t^{p-1}
double eval_div_r(const RadialPoly& f, double t, double radius) {
  double acc = 0.0;
  for (const auto& [p, c] : f.terms) {
    if (c == 0.0) continue;
    acc += c * std::pow(t, p - 1);
  }
  return acc / radius;
}

void validate_mode_poly(const RadialPoly& f, int n) {
  for (const auto& [p, c] : f.terms) {
    if (c == 0.0) continue;
    if (p < n || ((p - n) % 2) != 0) {
      throw std::invalid_argument(
          "disk field: radial power must be >= angular index with matching parity");
    }
  }
}

}  // namespace

double radial_boundary_derivative(const RadialPoly& f, int order, double radius) {
  return eval_deriv(f, 1.0, order, radius);
}

double disk_volume_form(int k, int n, const RadialPoly& f, const RadialPoly& g,
                        double radius, const QuadOptions& quad) {
  validate_mode_poly(f, n);
  validate_mode_poly(g, n);
  const double R = radius;
  if (k == 1) {
    auto integrand = [&](double t) {
      double v = eval_deriv(f, t, 1, R) * eval_deriv(g, t, 1, R);
      if (n > 0) {
        v += n * n * eval_div_r(f, t, R) * eval_div_r(g, t, R);
      }
      return v * R * t * R;  // r dr = R^2 t dt
    };
    return angular_factor(n) * integrate_adaptive(integrand, 0.0, 1.0, quad);
  }
  if (k == 2) {
    auto integrand = [&](double t) {
      double v = eval_deriv(f, t, 2, R) * eval_deriv(g, t, 2, R) +
                 eval_theta(f, t, n, R) * eval_theta(g, t, n, R);
      if (n > 0) {
        v += 2.0 * n * n * eval_mixed(f, t, R) * eval_mixed(g, t, R);
      }
      return v * R * t * R;
    };
    return angular_factor(n) * integrate_adaptive(integrand, 0.0, 1.0, quad);
  }
  throw std::invalid_argument("disk_volume_form: only k = 1, 2 are supported");
}

double disk_boundary_form(int n, int j, const RadialPoly& f, const RadialPoly& g,
                          double radius) {
  return angular_factor(n) * radius * radial_boundary_derivative(f, j, radius) *
         radial_boundary_derivative(g, j, radius);
}

DiskModeForms disk_mode_forms(int n, double radius, const QuadOptions& quad) {
  DiskModeForms forms;
  const RadialPoly basis[2] = {RadialPoly{{{n, 1.0}}}, RadialPoly{{{n + 2, 1.0}}}};
  for (int a = 0; a < 2; ++a) {
    for (int b = a; b < 2; ++b) {
      forms.volume(a, b) = disk_volume_form(2, n, basis[a], basis[b], radius, quad);
      forms.b0(a, b) = disk_boundary_form(n, 0, basis[a], basis[b], radius);
      forms.b1(a, b) = disk_boundary_form(n, 1, basis[a], basis[b], radius);
      forms.volume(b, a) = forms.volume(a, b);
      forms.b0(b, a) = forms.b0(a, b);
      forms.b1(b, a) = forms.b1(a, b);
    }
    forms.trace0(a) = radial_boundary_derivative(basis[a], 0, radius);
    forms.trace1(a) = radial_boundary_derivative(basis[a], 1, radius);
  }
  return forms;
}

namespace {

struct DiskEigenfunction {
  int angular{0};
  TrigParity parity{TrigParity::cosine};
  RadialPoly radial;
};

class DiskBasis final : public SpectrumBasis {
 public:
  DiskBasis(int k, double radius, std::vector<DiskEigenfunction> eigfns,
            std::shared_ptr<const BoundaryParam> boundary, QuadOptions quad)
      : k_(k),
        radius_(radius),
        eigfns_(std::move(eigfns)),
        boundary_(std::move(boundary)),
        quad_(quad) {}

  int order() const override { return k_; }
  std::size_t size() const override { return eigfns_.size(); }
  double radius() const { return radius_; }
  const DiskEigenfunction& eigenfunction(std::size_t j) const { return eigfns_[j]; }

  double hk_inner(const Field& u, std::size_t j) const override {
    const auto* du = std::get_if<DiskField>(&u);
    if (du == nullptr) throw std::invalid_argument("disk basis: field is not a disk field");
    if (std::abs(du->radius - radius_) > 1e-12 * std::max(1.0, radius_)) {
      throw std::invalid_argument("disk basis: field radius does not match the basis");
    }
    const DiskEigenfunction& e = eigfns_.at(j);
    RadialPoly same_mode;
    for (const auto& term : du->terms) {
      if (term.angular == e.angular && term.parity == e.parity) {
        same_mode.terms.push_back({term.power, term.coeff});
      }
    }
    if (same_mode.terms.empty()) return 0.0;
    double acc = disk_volume_form(k_, e.angular, same_mode, e.radial, radius_, quad_);
    for (int m = 0; m < k_; ++m) {
      acc += disk_boundary_form(e.angular, m, same_mode, e.radial, radius_);
    }
    return acc;
  }

  Field combine(std::span<const double> coeffs) const override {
    if (coeffs.size() > eigfns_.size()) {
      throw std::invalid_argument("disk basis: more coefficients than eigenfunctions");
    }
    DiskField out;
    out.radius = radius_;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] == 0.0) continue;
      const DiskEigenfunction& e = eigfns_[j];
      for (const auto& [p, c] : e.radial.terms) {
        out.terms.push_back({e.angular, e.parity, p, coeffs[j] * c});
      }
    }
    return out;
  }

  Eigen::VectorXd sample_trace(const Field& u, int m) const override {
    const auto* du = std::get_if<DiskField>(&u);
    if (du == nullptr) throw std::invalid_argument("disk basis: field is not a disk field");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(boundary_->n_nodes());
    for (const auto& term : du->terms) {
      if (term.coeff == 0.0) continue;
      RadialPoly p{{{term.power, term.coeff}}};
      const double d = radial_boundary_derivative(p, m, radius_);
      if (d == 0.0) continue;
      for (std::size_t i = 0; i < boundary_->n_nodes(); ++i) {
        const double theta = boundary_->node_arclengths[i] / radius_;
        const double trig = term.parity == TrigParity::cosine
                                ? std::cos(term.angular * theta)
                                : std::sin(term.angular * theta);
        out[i] += d * trig;
      }
    }
    return out;
  }

  Eigen::VectorXd eigen_trace(int m, std::size_t j) const override {
    const DiskEigenfunction& e = eigfns_.at(j);
    const double d = radial_boundary_derivative(e.radial, m, radius_);
    Eigen::VectorXd out(boundary_->n_nodes());
    for (std::size_t i = 0; i < boundary_->n_nodes(); ++i) {
      const double theta = boundary_->node_arclengths[i] / radius_;
      out[i] = d * (e.parity == TrigParity::cosine ? std::cos(e.angular * theta)
                                                   : std::sin(e.angular * theta));
    }
    return out;
  }

 private:
  int k_;
  double radius_;
  std::vector<DiskEigenfunction> eigfns_;
  std::shared_ptr<const BoundaryParam> boundary_;
  QuadOptions quad_;
};

struct ModeEntry {
  double sigma{0.0};
  int angular{0};
  TrigParity parity{TrigParity::cosine};
  RadialPoly radial;  // unnormalized eigenvector in the mode basis
  double residual{0.0};  // scaled weak-equation residual of the pencil solve
};

struct ModeSolve {
  std::optional<ModeEntry> entry;  // cosine representative; sine is a copy for n >= 1
  bool skipped{false};
};

/// One finite eigenvalue per mode: the gamma_ell trace form has rank one on the
/// two-dimensional biharmonic mode space, so the pencil reduces by a scalar
/// Schur complement along the trace direction.
ModeSolve solve_mode_k2(int n, int ell, double beta_other, double radius,
                        const QuadOptions& quad) {
  const DiskModeForms f = disk_mode_forms(n, radius, quad);
  const Eigen::Matrix2d beta_term = (ell == 0) ? f.b1 : f.b0;
  const Eigen::Matrix2d A = f.volume + beta_other * beta_term;
  const Eigen::Matrix2d B = (ell == 0) ? f.b0 : f.b1;
  const Eigen::Vector2d tr = (ell == 0) ? f.trace0 : f.trace1;

  ModeSolve out;
  const double scale = A.cwiseAbs().maxCoeff() + B.cwiseAbs().maxCoeff();
  if (tr.norm() <= 1e-14 * std::max(1.0, scale)) {
    out.skipped = true;
    return out;
  }
  const Eigen::Vector2d v = tr.normalized();
  const Eigen::Vector2d w(-v.y(), v.x());
  const double avv = v.dot(A * v);
  const double avw = v.dot(A * w);
  const double aww = w.dot(A * w);
  const double b = v.dot(B * v);
  if (!(b > 0.0)) {
    out.skipped = true;
    return out;
  }
  double sigma;
  Eigen::Vector2d c;
  if (aww <= 1e-14 * std::max(1.0, scale)) {
    sigma = avv / b;
    c = v;
  } else {
    sigma = (avv - avw * avw / aww) / b;
    c = v - (avw / aww) * w;
  }
  ModeEntry e;
  e.sigma = sigma;
  e.angular = n;
  e.radial.terms = {{n, c(0)}, {n + 2, c(1)}};
  e.residual = (A * c - sigma * (B * c)).cwiseAbs().maxCoeff() / std::max(1.0, scale);
  out.entry = e;
  return out;
}

/// Constrained per-mode solve for the auxiliary family: the direction with
/// gamma_ell = 0 in the mode basis, Rayleigh quotient of bending over the
/// gamma_m trace form.
ModeSolve solve_mode_aux(int n, int ell, int m, double radius, const QuadOptions& quad) {
  const DiskModeForms f = disk_mode_forms(n, radius, quad);
  const Eigen::Vector2d tr_ell = (ell == 0) ? f.trace0 : f.trace1;
  const Eigen::Matrix2d Bm = (m == 0) ? f.b0 : f.b1;
  Eigen::Vector2d w(-tr_ell.y(), tr_ell.x());
  ModeSolve out;
  if (w.norm() <= 1e-14) {
    out.skipped = true;
    return out;
  }
  w.normalize();
  const double denom = w.dot(Bm * w);
  if (!(denom > 1e-14 * std::max(1.0, Bm.cwiseAbs().maxCoeff()))) {
    out.skipped = true;
    return out;
  }
  ModeEntry e;
  e.sigma = w.dot(f.volume * w) / denom;
  e.angular = n;
  e.radial.terms = {{n, w(0)}, {n + 2, w(1)}};
  // the constrained weak equation is tested along the admissible direction
  e.residual = std::abs(w.dot(f.volume * w) - e.sigma * denom) /
               std::max(1.0, f.volume.cwiseAbs().maxCoeff());
  out.entry = e;
  return out;
}

std::shared_ptr<const BoundaryParam> disk_boundary_for_modes(double radius, int max_mode,
                                                             int requested) {
  int m = requested > 0 ? requested : std::max(256, 4 * (max_mode + 1));
  if (m < 4 * (max_mode + 1)) {
    log::info("disk boundary: %d samples cannot resolve mode %d without aliasing", m, max_mode);
  }
  return build_disk(radius, m).boundary;
}

Spectrum finalize_disk_spectrum(SteklovProblemSpec problem, std::vector<ModeEntry> entries,
                                std::vector<int> skipped, double radius, int max_mode,
                                const DiskSolveOptions& opts, const std::string& id_prefix,
                                std::optional<std::pair<int, int>> aux) {
  std::sort(entries.begin(), entries.end(), [](const ModeEntry& a, const ModeEntry& b) {
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    if (a.angular != b.angular) return a.angular < b.angular;
    return a.parity == TrigParity::cosine && b.parity == TrigParity::sine;
  });

  Spectrum spec;
  spec.problem = std::move(problem);
  spec.auxiliary_indices = aux;
  spec.boundary = disk_boundary_for_modes(radius, max_mode, opts.n_boundary_samples);
  spec.eigenvalues.reserve(entries.size());
  for (const auto& e : entries) spec.eigenvalues.push_back(e.sigma);
  clamp_small_eigenvalues(spec.eigenvalues);
  spec.multiplicity_groups = group_multiplicities(spec.eigenvalues);
  spec.diagnostics.skipped_modes = std::move(skipped);
  spec.diagnostics.reduced_dimension = max_mode + 1;
  for (const auto& e : entries) {
    spec.diagnostics.weak_residual = std::max(spec.diagnostics.weak_residual, e.residual);
  }

  const int k = spec.problem.k;
  std::vector<DiskEigenfunction> eigfns;
  eigfns.reserve(entries.size());
  for (auto& e : entries) {
    // normalize in the boundary-augmented H^k norm
    double norm_sq = disk_volume_form(k, e.angular, e.radial, e.radial, radius, opts.quad);
    for (int m = 0; m < k; ++m) {
      norm_sq += disk_boundary_form(e.angular, m, e.radial, e.radial, radius);
    }
    if (!(norm_sq > 0.0)) throw SolverError("disk spectrum: eigenvector with vanishing norm");
    double scale = 1.0 / std::sqrt(norm_sq);
    // sign: make the selected trace positive at its first nonvanishing sample
    const int sign_trace = spec.problem.ell;
    const double d = radial_boundary_derivative(e.radial, sign_trace, radius);
    if (d < 0.0) scale = -scale;
    for (auto& [p, c] : e.radial.terms) c *= scale;
    eigfns.push_back({e.angular, e.parity, e.radial});
  }
  auto basis = std::make_shared<DiskBasis>(k, radius, std::move(eigfns), spec.boundary, opts.quad);
  spec.basis = basis;
  std::ostringstream id;
  id << id_prefix << "-R" << fmt17(radius) << "-n" << spec.eigenvalues.size();
  spec.basis_id = id.str();
  return spec;
}

}  // namespace

Spectrum laplace_steklov_disk(double radius, int n_modes, const DiskSolveOptions& opts) {
  if (!(radius > 0.0)) throw std::invalid_argument("laplace_steklov_disk: radius must be positive");
  if (n_modes < 1) throw std::invalid_argument("laplace_steklov_disk: n_modes must be >= 1");

  std::vector<ModeEntry> entries(2 * n_modes + 1);
  parallel_for(
      static_cast<std::size_t>(n_modes) + 1,
      [&](std::size_t nn) {
        const int n = static_cast<int>(nn);
        RadialPoly f{{{n, 1.0}}};
        const double vol = disk_volume_form(1, n, f, f, radius, opts.quad);
        const double b0 = disk_boundary_form(n, 0, f, f, radius);
        ModeEntry e;
        e.sigma = vol / b0;
        e.angular = n;
        e.radial = f;
        e.residual = std::abs(vol - e.sigma * b0) / std::max(1.0, std::abs(vol));
        if (n == 0) {
          entries[0] = e;
        } else {
          e.parity = TrigParity::cosine;
          entries[2 * n - 1] = e;
          e.parity = TrigParity::sine;
          entries[2 * n] = e;
        }
      },
      worker_cap());

  SteklovProblemSpec problem;
  problem.k = 1;
  problem.ell = 0;
  problem.domain = DiskDomain{radius, {0.0, 0.0}};
  return finalize_disk_spectrum(std::move(problem), std::move(entries), {}, radius, n_modes,
                                opts, "disk-k1-l0", std::nullopt);
}

namespace {

Spectrum sweep_disk_modes(const SteklovProblemSpec& problem, int n_eigs,
                          const DiskSolveOptions& opts, bool auxiliary, int aux_m,
                          const std::string& id_prefix) {
  const auto* disk = std::get_if<DiskDomain>(&problem.domain);
  if (disk == nullptr) throw std::invalid_argument("disk solver: domain is not a disk");
  const double radius = disk->radius;
  const int ell = problem.ell;
  const double beta_other = problem.beta_or_default(1 - ell);

  std::vector<ModeEntry> entries;
  std::vector<int> skipped;
  std::vector<double> mode_sigma;
  int n = 0;
  int extra = 0;
  const int hard_cap = 4 * n_eigs + 512;
  while (true) {
    const ModeSolve ms = auxiliary ? solve_mode_aux(n, ell, aux_m, radius, opts.quad)
                                   : solve_mode_k2(n, ell, beta_other, radius, opts.quad);
    if (ms.skipped) {
      skipped.push_back(n);
      mode_sigma.push_back(std::numeric_limits<double>::infinity());
    } else {
      ModeEntry e = *ms.entry;
      mode_sigma.push_back(e.sigma);
      e.parity = TrigParity::cosine;
      entries.push_back(e);
      if (n >= 1) {
        e.parity = TrigParity::sine;
        entries.push_back(e);
      }
    }
    bool certified = false;
    if (static_cast<int>(entries.size()) > n_eigs && mode_sigma.size() >= 3) {
      std::vector<double> sorted;
      sorted.reserve(entries.size());
      for (const auto& e : entries) sorted.push_back(e.sigma);
      std::nth_element(sorted.begin(), sorted.begin() + (n_eigs - 1), sorted.end());
      const double kth = sorted[n_eigs - 1];
      const std::size_t s = mode_sigma.size();
      certified = mode_sigma[s - 1] > kth && mode_sigma[s - 2] > kth && mode_sigma[s - 3] > kth &&
                  mode_sigma[s - 1] >= mode_sigma[s - 2] && mode_sigma[s - 2] >= mode_sigma[s - 3];
    }
    if (certified) {
      if (++extra >= 2) break;
    } else {
      extra = 0;
    }
    if (++n > hard_cap) {
      throw SolverError("disk mode sweep did not certify the requested eigenvalue count");
    }
  }
  const int max_mode = n;
  std::sort(entries.begin(), entries.end(), [](const ModeEntry& a, const ModeEntry& b) {
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    if (a.angular != b.angular) return a.angular < b.angular;
    return a.parity == TrigParity::cosine && b.parity == TrigParity::sine;
  });
  entries.resize(n_eigs);
  SteklovProblemSpec spec_out = problem;
  return finalize_disk_spectrum(std::move(spec_out), std::move(entries), std::move(skipped),
                                radius, max_mode, opts, id_prefix,
                                auxiliary ? std::optional<std::pair<int, int>>({ell, aux_m})
                                          : std::nullopt);
}

}  // namespace

Spectrum biharmonic_steklov_disk(const SteklovProblemSpec& spec, int n_eigs,
                                 const DiskSolveOptions& opts) {
  spec.validate();
  if (spec.k != 2) throw std::invalid_argument("biharmonic_steklov_disk: k must be 2");
  if (n_eigs < 1) throw std::invalid_argument("biharmonic_steklov_disk: n_eigs must be >= 1");
  std::ostringstream prefix;
  prefix << "disk-k2-l" << spec.ell;
  return sweep_disk_modes(spec, n_eigs, opts, false, -1, prefix.str());
}

Spectrum disk_auxiliary_spectrum(double radius, int ell, int m, int n_eigs,
                                 const DiskSolveOptions& opts) {
  if (ell < 0 || ell > 1 || m < 0 || m > 1 || ell == m) {
    throw std::invalid_argument("disk_auxiliary_spectrum: need ell, m in {0,1}, ell != m");
  }
  if (n_eigs < 1) throw std::invalid_argument("disk_auxiliary_spectrum: n_eigs must be >= 1");
  SteklovProblemSpec problem;
  problem.k = 2;
  problem.ell = m;  // the normalized traces of an auxiliary spectrum use gamma_m
  problem.domain = DiskDomain{radius, {0.0, 0.0}};
  std::ostringstream prefix;
  prefix << "disk-aux-l" << ell << "m" << m;
  SteklovProblemSpec constrained = problem;
  constrained.ell = ell;  // the constraint gamma_ell = 0 drives the mode solve
  Spectrum s = sweep_disk_modes(constrained, n_eigs, opts, true, m, prefix.str());
  s.problem.ell = m;
  return s;
}

// ---------------------------------------------------------------------------
// polynomial kernel checker (Cartesian representation, exact disk moments)

namespace {

using Poly2 = std::map<std::pair<int, int>, double>;

Poly2 derive(const Poly2& p, int axis) {
  Poly2 out;
  for (const auto& [deg, c] : p) {
    const int dx = deg.first, dy = deg.second;
    if (axis == 0 && dx > 0) out[{dx - 1, dy}] += c * dx;
    if (axis == 1 && dy > 0) out[{dx, dy - 1}] += c * dy;
  }
  return out;
}

Poly2 derive_multi(Poly2 p, int nx, int ny) {
  for (int i = 0; i < nx; ++i) p = derive(p, 0);
  for (int i = 0; i < ny; ++i) p = derive(p, 1);
  return p;
}

double eval_poly(const Poly2& p, double x, double y) {
  double acc = 0.0;
  for (const auto& [deg, c] : p) acc += c * std::pow(x, deg.first) * std::pow(y, deg.second);
  return acc;
}

double double_factorial(int n) {
  double acc = 1.0;
  for (int k = n; k > 1; k -= 2) acc *= k;
  return acc;
}

// exact integral of x^a y^b over the disk of radius R
double disk_moment(int a, int b, double radius) {
  if (a % 2 == 1 || b % 2 == 1) return 0.0;
  const double radial = std::pow(radius, a + b + 2) / (a + b + 2);
  const double angular =
      2.0 * M_PI * double_factorial(a - 1) * double_factorial(b - 1) / double_factorial(a + b);
  return radial * angular;
}

double integrate_disk(const Poly2& p, double radius) {
  double acc = 0.0;
  for (const auto& [deg, c] : p) acc += c * disk_moment(deg.first, deg.second, radius);
  return acc;
}

double binomial(int n, int k) {
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc = acc * (n - i) / (i + 1);
  return acc;
}

// volume part of the order-k form: sum over |alpha| = k with multinomial weights
double volume_form_sq(const Poly2& u, int k, double radius) {
  double acc = 0.0;
  for (int i = 0; i <= k; ++i) {
    Poly2 d = derive_multi(u, i, k - i);
    Poly2 prod;
    for (const auto& [da, ca] : d) {
      for (const auto& [db, cb] : d) {
        prod[{da.first + db.first, da.second + db.second}] += ca * cb;
      }
    }
    acc += binomial(k, i) * integrate_disk(prod, radius);
  }
  return acc;
}

// boundary mass of the j-th normal derivative on the circle r = R (trapezoid
// on a trigonometric polynomial, exact with enough nodes)
double trace_mass(const Poly2& u, int j, double radius) {
  const int m = 1024;
  std::vector<Poly2> partials;
  for (int i = 0; i <= j; ++i) partials.push_back(derive_multi(u, i, j - i));
  double acc = 0.0;
  for (int q = 0; q < m; ++q) {
    const double theta = 2.0 * M_PI * q / m;
    const double cx = std::cos(theta), sy = std::sin(theta);
    double g = 0.0;
    for (int i = 0; i <= j; ++i) {
      g += binomial(j, i) * std::pow(cx, i) * std::pow(sy, j - i) *
           eval_poly(partials[i], radius * cx, radius * sy);
    }
    acc += g * g;
  }
  return acc * (2.0 * M_PI * radius / m);
}

KernelCandidate evaluate_candidate(const std::string& name, const Poly2& u, int k, int ell,
                                   double radius, const std::map<int, double>& beta) {
  KernelCandidate cand;
  cand.name = name;
  double q = volume_form_sq(u, k, radius);
  double scale = q;
  for (int j = 0; j < k; ++j) {
    const double mass = trace_mass(u, j, radius);
    scale += mass;
    if (j == ell) continue;
    auto it = beta.find(j);
    const double bj = it == beta.end() ? 1.0 : it->second;
    q += bj * mass;
  }
  cand.trace_mass = trace_mass(u, ell, radius);
  cand.residual = scale > 0.0 ? q / scale : 0.0;
  cand.in_kernel = cand.residual < 1e-10 && cand.trace_mass > 1e-12;
  return cand;
}

}  // namespace

KernelCheckResult polynomial_kernel_check(int k, int ell, double radius,
                                          const std::map<int, double>& beta) {
  if (k < 1 || k > 4) throw std::invalid_argument("polynomial_kernel_check: k must be in 1..4");
  if (ell < 0 || ell > k - 1) throw std::invalid_argument("polynomial_kernel_check: bad ell");
  if (!(radius > 0.0)) throw std::invalid_argument("polynomial_kernel_check: bad radius");

  std::vector<std::pair<std::string, Poly2>> candidates;
  candidates.push_back({"1", Poly2{{{0, 0}, 1.0}}});
  // radially symmetric polynomials of degree <= k-1
  for (int d = 2; d <= k - 1; d += 2) {
    Poly2 p;
    const int half = d / 2;
    // (x^2 + y^2)^half
    for (int i = 0; i <= half; ++i) p[{2 * i, 2 * (half - i)}] = binomial(half, i);
    std::ostringstream name;
    name << "|x|^" << d;
    candidates.push_back({name.str(), p});
  }
  // coordinate monomials of total degree 1..k-1
  for (int d = 1; d <= k - 1; ++d) {
    for (int i = d; i >= 0; --i) {
      Poly2 p{{{i, d - i}, 1.0}};
      std::ostringstream name;
      if (i > 0) name << "x" << (i > 1 ? "^" + std::to_string(i) : "");
      if (i > 0 && i < d) name << " ";
      if (i < d) name << "y" << (d - i > 1 ? "^" + std::to_string(d - i) : "");
      candidates.push_back({name.str(), p});
    }
  }

  KernelCheckResult result;
  for (const auto& [name, p] : candidates) {
    result.candidates.push_back(evaluate_candidate(name, p, k, ell, radius, beta));
    if (result.candidates.back().in_kernel) result.kernel.push_back(result.candidates.back());
  }
  if (k == 3 && ell == 1) {
    Poly2 u{{{0, 0}, 2.0}, {{2, 0}, -1.0}, {{0, 2}, -1.0}};
    result.reference = evaluate_candidate("2 - |x|^2", u, k, ell, radius, beta);
  }
  return result;
}

}  // namespace steklov
