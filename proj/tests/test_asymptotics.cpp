#include <cmath>

#include "doctest.h"
#include "steklov/asymptotics.hpp"
#include "steklov/disk_spectral.hpp"

using namespace steklov;

TEST_CASE("weyl fit: harmonic disk gives exponent 1 and constant 1/2") {
  const Spectrum s = laplace_steklov_disk(1.0, 100);  // 201 eigenvalues
  const WeylFit fit = weyl_fit(s, 10, 200);
  CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.02));
  CHECK(fit.constant == doctest::Approx(0.5).epsilon(0.10));
  // closed-form law constant: 2 pi / omega_1 = pi with omega_1 = 2
  CHECK(fit.law_constant == doctest::Approx(M_PI).epsilon(0.10));
  CHECK(fit.r_squared > 0.999);
}

TEST_CASE("weyl fit: widening the range tightens the harmonic exponent") {
  const Spectrum s = laplace_steklov_disk(1.0, 110);
  double prev_err = 1e9;
  for (int j_max : {60, 120, 220}) {
    const WeylFit fit = weyl_fit(s, 10, j_max);
    const double err = std::abs(fit.exponent - 1.0);
    CHECK(err <= prev_err + 1e-6);
    prev_err = err;
  }
}

TEST_CASE("weyl fit: biharmonic disk exponents 3 and 1") {
  SteklovProblemSpec p0;
  p0.k = 2;
  p0.ell = 0;
  p0.domain = DiskDomain{1.0, {0.0, 0.0}};
  const Spectrum s0 = biharmonic_steklov_disk(p0, 200);
  const WeylFit f0 = weyl_fit(s0, 10, 200);
  CHECK(f0.exponent == doctest::Approx(3.0).epsilon(0.10));

  SteklovProblemSpec p1 = p0;
  p1.ell = 1;
  const Spectrum s1 = biharmonic_steklov_disk(p1, 200);
  const WeylFit f1 = weyl_fit(s1, 10, 200);
  CHECK(f1.exponent == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("weyl fit: flat synthetic sequence has exponent zero") {
  std::vector<double> flat(60, 5.0);
  const WeylFit fit = weyl_fit_values(flat, 10, 60, 0.0);
  CHECK(fit.exponent == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(fit.constant == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("weyl fit: scaling moves the constant, not the exponent") {
  const Spectrum s1 = laplace_steklov_disk(1.0, 60);
  const Spectrum s2 = laplace_steklov_disk(2.0, 60);  // sigma scales by 1/2
  const WeylFit f1 = weyl_fit(s1, 10, 120);
  const WeylFit f2 = weyl_fit(s2, 10, 120);
  CHECK(f1.exponent == doctest::Approx(f2.exponent).epsilon(1e-9));
  CHECK(f2.constant == doctest::Approx(0.5 * f1.constant).epsilon(1e-6));
}

TEST_CASE("weyl fit: too few eigenvalues rejected") {
  std::vector<double> few(15, 1.0);
  CHECK_THROWS_AS(weyl_fit_values(few, 1, 15, 0.0), std::invalid_argument);
}

TEST_CASE("sequence view: hadamard out at e=1/2, fast decay in, zero in") {
  const MembershipVerdict had = sequence_view(&hadamard_coefficient_at, 0.5, 1 << 14);
  CHECK(had.verdict == MembershipVerdict::State::out);
  CHECK(had.growth_exponent == doctest::Approx(0.5).epsilon(0.25));

  const MembershipVerdict fast = sequence_view(
      [](std::size_t j) { return std::pow(static_cast<double>(j), -2.0); }, 0.5, 1 << 14);
  CHECK(fast.verdict == MembershipVerdict::State::in);

  const MembershipVerdict zero = sequence_view([](std::size_t) { return 0.0; }, 0.5, 1024);
  CHECK(zero.verdict == MembershipVerdict::State::in);
}
