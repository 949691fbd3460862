#pragma once

#include <functional>
#include <vector>

namespace steklov {

struct QuadOptions {
  double rel_tol{1e-12};
  double abs_tol{1e-14};
  int max_depth{48};
};

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
/// Bisects intervals until the embedded error estimate meets the tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadOptions& opts = {});

struct GaussRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

/// Gauss-Legendre rule with n points mapped to [0, 1]; exact for degree 2n-1.
const GaussRule& gauss_rule(int n);

}  // namespace steklov
