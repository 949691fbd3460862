#include <cmath>

#include "doctest.h"
#include "steklov/quadrature.hpp"
#include "steklov/util.hpp"

using namespace steklov;

TEST_CASE("adaptive quadrature hits smooth integrals at tolerance") {
  CHECK(integrate_adaptive([](double x) { return x * x * x; }, 0.0, 1.0) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate_adaptive([](double x) { return std::exp(-x * x); }, -6.0, 6.0) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature resolves concentrated monomials") {
  // r^199 piles up near 1; subdivision has to dig it out
  CHECK(integrate_adaptive([](double r) { return std::pow(r, 199); }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 200.0).epsilon(1e-13));
  CHECK(integrate_adaptive([](double r) { return std::pow(r, 1999); }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 2000.0).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature rejects reversed intervals") {
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 1.0, 0.0),
                  std::invalid_argument);
  CHECK(integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("gauss rules integrate their exactness degree") {
  auto moment = [](const GaussRule& r, int p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      acc += r.weights[i] * std::pow(r.nodes[i], p);
    }
    return acc;
  };
  const GaussRule& g1 = gauss_rule(1);
  CHECK(g1.nodes[0] == doctest::Approx(0.5));
  CHECK(g1.weights[0] == doctest::Approx(1.0));
  const GaussRule& g4 = gauss_rule(4);
  for (int p = 0; p <= 7; ++p) {
    CHECK(moment(g4, p) == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
  }
  const GaussRule& g5 = gauss_rule(5);
  for (int p = 0; p <= 9; ++p) {
    CHECK(moment(g5, p) == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
  }
}

TEST_CASE("linear_fit recovers exact lines and r-squared") {
  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y{3, 5, 7, 9, 11};
  const LinearFit f = linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK_THROWS_AS(linear_fit({1.0}, {2.0}), std::invalid_argument);
}
