#pragma once

#include "steklov/trace_spaces.hpp"

namespace steklov {

/// Power-law fit sigma_j ~ constant * j^exponent over a 1-based index range.
/// law_constant rescales to the form C * (j / |boundary|)^exponent when the
/// spectrum knows its boundary length.
struct WeylFit {
  double exponent{0.0};
  double constant{0.0};
  double law_constant{0.0};
  std::pair<int, int> fit_range{0, 0};
  double r_squared{0.0};
};

/// Least squares of log sigma_j against log j, discarding zero eigenvalues and
/// everything before j_min (the pre-asymptotic head). j_max = 0 uses the whole
/// spectrum. Requires at least 20 usable eigenvalues.
WeylFit weyl_fit(const Spectrum& spectrum, int j_min = 10, int j_max = 0);

/// Same fit on a raw eigenvalue sequence (no boundary length available).
WeylFit weyl_fit_values(const std::vector<double>& eigenvalues, int j_min, int j_max,
                        double boundary_length = 0.0);

/// Verdict on (j^e s_j) being square-summable; delegates to the membership
/// classifier on the reweighted sequence.
MembershipVerdict sequence_view(const TraceCoefficients& c, double exponent,
                                const MembershipOptions& opts = {});

MembershipVerdict sequence_view(const std::function<double(std::size_t)>& coeff,
                                double exponent, std::size_t n_max,
                                const MembershipOptions& opts = {});

}  // namespace steklov
