#include "steklov/trace_spaces.hpp"

#include <cmath>
#include <stdexcept>

#include "steklov/util.hpp"

namespace steklov {

const std::string& TraceCoefficients::basis_id() const {
  if (!basis) throw std::invalid_argument("TraceCoefficients: basis is not live");
  return basis->basis_id;
}

void TraceCoefficients::validate() const {
  if (!basis) throw std::invalid_argument("TraceCoefficients: basis is not live");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw std::invalid_argument("TraceCoefficients: non-finite entry");
  }
  if (coeffs.size() > basis->size()) {
    throw std::invalid_argument("TraceCoefficients: truncation exceeds the basis size");
  }
}

WeightScheme WeightScheme::HsA(double s) {
  if (s < 0.0) throw std::invalid_argument("WeightScheme: HsA needs s >= 0");
  WeightScheme w;
  w.kind = Kind::hs_a;
  w.s = s;
  return w;
}

WeightScheme WeightScheme::HkA() {
  WeightScheme w;
  w.kind = Kind::hk_a;
  return w;
}

double WeightScheme::weight(double sigma) const {
  return kind == Kind::hs_a ? std::pow(1.0 + sigma, 2.0 * s) : (1.0 + sigma);
}

const char* to_string(MembershipVerdict::State s) {
  switch (s) {
    case MembershipVerdict::State::in:
      return "in";
    case MembershipVerdict::State::out:
      return "out";
    default:
      return "undecided";
  }
}

TraceCoefficients steklov_expand(const Field& u, std::shared_ptr<const Spectrum> spectrum,
                                 std::size_t n) {
  if (!spectrum || !spectrum->basis) {
    throw std::invalid_argument("steklov_expand: spectrum has no basis backend");
  }
  if (n > spectrum->size()) {
    throw std::invalid_argument("steklov_expand: truncation exceeds the available modes");
  }
  TraceCoefficients c;
  c.basis = spectrum;
  c.coeffs.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    c.coeffs[j] = spectrum->basis->hk_inner(u, j);
  }
  return c;
}

TraceCoefficients boundary_expand(const BoundarySamples& g,
                                  std::shared_ptr<const Spectrum> spectrum, std::size_t n) {
  if (!spectrum || !spectrum->boundary) {
    throw std::invalid_argument("boundary_expand: spectrum has no boundary");
  }
  if (n > spectrum->size()) {
    throw std::invalid_argument("boundary_expand: truncation exceeds the available modes");
  }
  const BoundaryParam& bp = *spectrum->boundary;
  if (!g.param || g.param->n_nodes() != bp.n_nodes() ||
      std::abs(g.param->total_length - bp.total_length) > 1e-12 * (1.0 + bp.total_length)) {
    throw std::invalid_argument("boundary_expand: samples do not live on the spectrum's nodes");
  }
  if (g.values.cols() != 1) {
    throw std::invalid_argument("boundary_expand: expected scalar boundary samples");
  }
  TraceCoefficients c;
  c.basis = spectrum;
  c.coeffs.resize(n);
  const Eigen::Map<const Eigen::VectorXd> w(bp.node_weights.data(),
                                            static_cast<Eigen::Index>(bp.node_weights.size()));
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::VectorXd uhat = spectrum->normalized_trace(j);
    c.coeffs[j] = (g.values.col(0).array() * uhat.array() * w.array()).sum();
  }
  return c;
}

double weighted_norm(const TraceCoefficients& c, const WeightScheme& w) {
  c.validate();
  double acc = 0.0;
  for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
    acc += w.weight(c.basis->eigenvalues[j]) * c.coeffs[j] * c.coeffs[j];
  }
  return acc;
}

Field extend(const TraceCoefficients& c) {
  c.validate();
  std::vector<double> scaled(c.coeffs.size());
  for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
    scaled[j] = std::sqrt(1.0 + c.basis->eigenvalues[j]) * c.coeffs[j];
  }
  return c.basis->basis->combine(scaled);
}

Field extend(const TraceCoefficients& c, const Spectrum& spectrum) {
  if (!c.basis || c.basis->basis_id != spectrum.basis_id) {
    throw std::invalid_argument("extend: coefficients were expanded in a different basis");
  }
  return extend(c);
}

BoundarySamples trace_samples(const Spectrum& spectrum, const Field& u, int m) {
  if (!spectrum.basis) throw std::invalid_argument("trace_samples: spectrum has no basis");
  BoundarySamples s;
  s.param = spectrum.boundary;
  s.values = spectrum.basis->sample_trace(u, m);
  return s;
}

MembershipVerdict classify_membership(const std::function<double(std::size_t)>& coeff,
                                      const std::function<double(std::size_t)>& weight,
                                      std::size_t n_max, const MembershipOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("classify_membership: n_max must be >= 1");
  MembershipVerdict v;
  // checkpoints: every power of two, plus floor(n_max / 2) and n_max so the
  // Cauchy tail is always measured over a genuine octave
  std::vector<std::size_t> marks;
  for (std::size_t c = 1; c <= n_max; c *= 2) marks.push_back(c);
  marks.push_back(n_max / 2);
  marks.push_back(n_max);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  while (!marks.empty() && marks.front() == 0) marks.erase(marks.begin());

  double s = 0.0;
  std::size_t mark_idx = 0;
  std::vector<double> dyadic_n, dyadic_s;  // power-of-two checkpoints for the fits
  for (std::size_t j = 1; j <= n_max; ++j) {
    const double g = coeff(j);
    s += weight(j) * g * g;
    while (mark_idx < marks.size() && j == marks[mark_idx]) {
      v.partial_sums.push_back({j, s});
      if ((j & (j - 1)) == 0) {
        dyadic_n.push_back(static_cast<double>(j));
        dyadic_s.push_back(s);
      }
      ++mark_idx;
    }
  }
  const double total = s;

  // growth fit of the partial sums over the top half of the octaves
  const std::size_t nd = dyadic_n.size();
  {
    std::vector<double> lx, ly;
    for (std::size_t i = nd / 2; i < nd; ++i) {
      if (dyadic_s[i] > 0.0) {
        lx.push_back(std::log(dyadic_n[i]));
        ly.push_back(std::log(dyadic_s[i]));
      }
    }
    if (lx.size() >= 3) {
      const LinearFit fit = linear_fit(lx, ly);
      v.growth_exponent = fit.slope;
      v.growth_r2 = fit.r_squared;
    }
  }

  if (total == 0.0) {
    v.verdict = MembershipVerdict::State::in;
    v.extrapolated = 0.0;
    return v;
  }

  // hard Cauchy route over the last full octave
  {
    double half_sum = 0.0;
    for (const auto& [nn, ss] : v.partial_sums) {
      if (nn <= n_max / 2) half_sum = ss;
    }
    const double tail = total - half_sum;
    if (n_max >= 2 && tail <= opts.cauchy_tol * (1.0 + total)) {
      v.verdict = MembershipVerdict::State::in;
      v.extrapolated = total;
      return v;
    }
  }

  // divergence route
  if (nd >= 5 && v.growth_r2 >= opts.growth_r2_min &&
      v.growth_exponent >= opts.growth_exponent_min) {
    v.verdict = MembershipVerdict::State::out;
    return v;
  }

  // certified-decay route: octave increments falling like a negative power
  if (nd >= 6) {
    std::vector<double> lx, ly;
    bool positive = true;
    for (std::size_t i = nd / 2; i + 1 < nd; ++i) {
      const double d = dyadic_s[i + 1] - dyadic_s[i];
      if (d <= 0.0) {
        positive = false;
        break;
      }
      lx.push_back(std::log(dyadic_n[i + 1]));
      ly.push_back(std::log(d));
    }
    if (positive && lx.size() >= 3) {
      const LinearFit fit = linear_fit(lx, ly);
      if (fit.slope <= opts.decay_slope_max && fit.r_squared >= opts.decay_r2_min) {
        const double rho = std::pow(2.0, fit.slope);
        const double last_inc = dyadic_s[nd - 1] - dyadic_s[nd - 2];
        const double tail_est = last_inc * rho / (1.0 - rho);
        if (tail_est <= opts.extrapolated_tail_max * (1.0 + total)) {
          v.verdict = MembershipVerdict::State::in;
          v.extrapolated = total + tail_est;
          return v;
        }
      }
    }
  }

  v.verdict = MembershipVerdict::State::undecided;
  return v;
}

MembershipVerdict classify_membership(const std::function<double(std::size_t)>& coeff,
                                      const WeightScheme& scheme, const Spectrum& spectrum,
                                      std::size_t n_max, const MembershipOptions& opts) {
  if (n_max > spectrum.size()) {
    throw std::invalid_argument("classify_membership: n_max exceeds the spectrum size");
  }
  return classify_membership(
      coeff,
      [&scheme, &spectrum](std::size_t j) { return scheme.weight(spectrum.eigenvalues[j - 1]); },
      n_max, opts);
}

double hadamard_coefficient_at(std::size_t j) {
  // basis order: constant, cos 1, sin 1, cos 2, sin 2, ...
  if (j < 2 || j % 2 != 0) return 0.0;
  const double n = static_cast<double>(j) / 2.0;
  return std::pow(n, -0.75);
}

TraceCoefficients hadamard_coefficients(std::shared_ptr<const Spectrum> disk_basis,
                                        int n_cosine_modes) {
  if (!disk_basis) throw std::invalid_argument("hadamard_coefficients: null basis");
  if (disk_basis->problem.k != 1) {
    throw std::invalid_argument("hadamard_coefficients: need the k=1 disk basis");
  }
  const std::size_t needed = 2 * static_cast<std::size_t>(n_cosine_modes) + 1;
  if (disk_basis->size() < needed) {
    throw std::invalid_argument("hadamard_coefficients: basis holds too few modes");
  }
  TraceCoefficients c;
  c.basis = std::move(disk_basis);
  c.coeffs.assign(needed, 0.0);
  for (int n = 1; n <= n_cosine_modes; ++n) {
    c.coeffs[2 * n - 1] = std::pow(static_cast<double>(n), -0.75);
  }
  return c;
}

}  // namespace steklov
