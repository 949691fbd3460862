#pragma once

#include <vector>

#include "steklov/geometry.hpp"
#include "steklov/util.hpp"

namespace steklov {

/// Estimate of a fractional seminorm raised to the p-th power, reported as a
/// refinement sequence. `divergent` is claimed only when the growth fit
/// against log(1/cutoff) has positive slope with r^2 > 0.95.
struct SeminormEstimate {
  std::vector<std::pair<double, double>> value_at_levels;  // (cutoff, estimate)
  bool divergent{false};
  double extrapolated{0.0};  // the finest-level value when not divergent
  LinearFit growth;          // estimate against log(1/cutoff)
  double relative_growth{0.0};  // per-dyadic-level gain relative to the estimate
};

/// Double-sum Gagliardo-Slobodeckij seminorm (to the p-th power) on a boundary
/// function: pairs closer than the cutoff are excluded and the cutoff shrinks
/// dyadically, so a non-member shows up as steady growth per level.
/// Distances are chordal.
SeminormEstimate gagliardo_seminorm(const BoundarySamples& g, double s, double p);

/// Difference-based Besov seminorm (to the p-th power) of uniformly sampled
/// periodic data. The sigma-order estimate is divided by the exact constant
/// that makes a pure frequency come out order-independent, so sigma = 1 and
/// sigma = 2 report comparable numbers.
SeminormEstimate besov_diff_seminorm(const BoundarySamples& g, double s, double p,
                                     int sigma_order);

}  // namespace steklov
