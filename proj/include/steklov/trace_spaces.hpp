#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "steklov/spectrum.hpp"

namespace steklov {

/// Truncated expansion of a boundary function in the normalized trace basis
/// u-hat_j of a spectrum (or of a field in the eigenfunction basis u_j).
struct TraceCoefficients {
  std::shared_ptr<const Spectrum> basis;  // must stay live while used
  std::vector<double> coeffs;

  std::size_t truncation() const { return coeffs.size(); }
  const std::string& basis_id() const;
  void validate() const;
};

/// Two weight conventions that must not be conflated: the H^s_A spaces weight
/// with (1 + sigma_j)^{2s}; the trace spaces of the order-k family weight with
/// the first power of (1 + sigma_j).
struct WeightScheme {
  enum class Kind { hs_a, hk_a };
  Kind kind{Kind::hk_a};
  double s{0.5};

  static WeightScheme HsA(double s);
  static WeightScheme HkA();
  double weight(double sigma) const;
};

struct MembershipOptions {
  double cauchy_tol{1e-10};          // relative last-dyadic-increment for a hard "in"
  double growth_exponent_min{0.1};   // partial-sum log-log slope for "out"
  double growth_r2_min{0.99};
  // octave increments must decay like a clearly summable power before the
  // extrapolation route may certify convergence; log-type decays stay out
  double decay_slope_max{-0.3};
  double decay_r2_min{0.95};
  double extrapolated_tail_max{0.15};  // relative to 1 + partial sum
};

struct MembershipVerdict {
  enum class State { in, out, undecided };
  State verdict{State::undecided};
  std::vector<std::pair<std::size_t, double>> partial_sums;  // dyadic checkpoints
  double growth_exponent{0.0};  // log-log slope of the partial sums
  double growth_r2{0.0};
  double extrapolated{0.0};  // limit estimate, meaningful only for "in"
};

const char* to_string(MembershipVerdict::State s);

/// a_j = <u, u_j> in the boundary-augmented H^k product.
TraceCoefficients steklov_expand(const Field& u, std::shared_ptr<const Spectrum> spectrum,
                                 std::size_t n);

/// g_j = (g, u-hat_j)_{L2} by boundary quadrature.
TraceCoefficients boundary_expand(const BoundarySamples& g,
                                  std::shared_ptr<const Spectrum> spectrum, std::size_t n);

/// Truncated weighted sum  sum w(sigma_j) g_j^2  (the squared trace norm).
double weighted_norm(const TraceCoefficients& c, const WeightScheme& w);

/// E g = sum sqrt(1 + sigma_j) g_j u_j.
Field extend(const TraceCoefficients& c);
Field extend(const TraceCoefficients& c, const Spectrum& spectrum);

/// gamma_m of a field, wrapped as samples on the spectrum's boundary nodes.
BoundarySamples trace_samples(const Spectrum& spectrum, const Field& u, int m);

/// Decides summability of sum w_j g_j^2 from finitely many terms. Never claims
/// "in" or "out" without the evidence thresholds in MembershipOptions; both
/// generators are 1-based.
MembershipVerdict classify_membership(const std::function<double(std::size_t)>& coeff,
                                      const std::function<double(std::size_t)>& weight,
                                      std::size_t n_max, const MembershipOptions& opts = {});

/// Convenience overload taking the weights from a scheme over a spectrum's
/// eigenvalues (the generator may run past the spectrum size only if the
/// spectrum provides that many eigenvalues).
MembershipVerdict classify_membership(const std::function<double(std::size_t)>& coeff,
                                      const WeightScheme& scheme, const Spectrum& spectrum,
                                      std::size_t n_max, const MembershipOptions& opts = {});

/// The classical counterexample on the unit-disk harmonic basis: coefficient
/// n^{-3/4} on every cosine mode. Square-summable, but the H^{1/2}_A weights
/// (1+n) push the partial sums to ~ 2 sqrt(N).
TraceCoefficients hadamard_coefficients(std::shared_ptr<const Spectrum> disk_basis,
                                        int n_cosine_modes);

/// Generator form of the same coefficients (1-based index over the basis
/// ordering constant, cos 1, sin 1, cos 2, ...), usable for large N without
/// materializing eigenvectors.
double hadamard_coefficient_at(std::size_t j);

}  // namespace steklov
