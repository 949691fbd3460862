#include "steklov/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "steklov/util.hpp"

namespace steklov {

WeylFit weyl_fit_values(const std::vector<double>& eigenvalues, int j_min, int j_max,
                        double boundary_length) {
  const int n = static_cast<int>(eigenvalues.size());
  if (j_max <= 0 || j_max > n) j_max = n;
  if (j_min < 1) j_min = 1;
  std::vector<double> lx, ly;
  for (int j = j_min; j <= j_max; ++j) {
    const double s = eigenvalues[j - 1];
    if (s > 0.0) {
      lx.push_back(std::log(static_cast<double>(j)));
      ly.push_back(std::log(s));
    }
  }
  if (lx.size() < 20) {
    throw std::invalid_argument("weyl_fit: need at least 20 positive eigenvalues above j_min");
  }
  const LinearFit fit = linear_fit(lx, ly);
  WeylFit w;
  w.exponent = fit.slope;
  w.constant = std::exp(fit.intercept);
  w.law_constant =
      boundary_length > 0.0 ? w.constant * std::pow(boundary_length, fit.slope) : 0.0;
  w.fit_range = {j_min, j_max};
  w.r_squared = fit.r_squared;
  return w;
}

WeylFit weyl_fit(const Spectrum& spectrum, int j_min, int j_max) {
  const double length = spectrum.boundary ? spectrum.boundary->total_length : 0.0;
  return weyl_fit_values(spectrum.eigenvalues, j_min, j_max, length);
}

MembershipVerdict sequence_view(const std::function<double(std::size_t)>& coeff,
                                double exponent, std::size_t n_max,
                                const MembershipOptions& opts) {
  return classify_membership(
      [&coeff, exponent](std::size_t j) {
        return std::pow(static_cast<double>(j), exponent) * coeff(j);
      },
      [](std::size_t) { return 1.0; }, n_max, opts);
}

MembershipVerdict sequence_view(const TraceCoefficients& c, double exponent,
                                const MembershipOptions& opts) {
  c.validate();
  const auto& coeffs = c.coeffs;
  if (coeffs.empty()) throw std::invalid_argument("sequence_view: empty coefficients");
  return sequence_view(
      [&coeffs](std::size_t j) { return j <= coeffs.size() ? coeffs[j - 1] : 0.0; }, exponent,
      coeffs.size(), opts);
}

}  // namespace steklov
