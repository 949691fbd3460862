#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace steklov {

/// Numerical failure inside a solver (factorization breakdown, no convergence).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// A computed result violated one of the library's stated invariants.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Format a double with 17 significant digits (round-trip safe).
std::string fmt17(double x);

struct LinearFit {
  double slope{0.0};
  double intercept{0.0};
  double r_squared{0.0};
  std::size_t n{0};
};

/// Ordinary least squares y = intercept + slope * x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Run fn(i) for i in [0, n) on up to max_threads workers.
/// Work is split into fixed contiguous chunks so results and rounding do not
/// depend on scheduling; callers write to preallocated slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned max_threads);

/// Global worker cap used by parallel_for callers (set from the CLI --threads flag).
unsigned worker_cap();
void set_worker_cap(unsigned cap);

}  // namespace steklov
