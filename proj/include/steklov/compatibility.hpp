#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "steklov/besov_oracle.hpp"
#include "steklov/trace_spaces.hpp"

namespace steklov {

/// Candidate total-trace datum (g0, g1): each component is either sampled on
/// the shared boundary nodes or already expanded in its own trace basis
/// (the ell=0 basis for g0, the ell=1 basis for g1).
struct TracePair {
  std::variant<BoundarySamples, TraceCoefficients> g0;
  std::variant<BoundarySamples, TraceCoefficients> g1;
};

/// Everything check_pair needs: both members of the k=2 family and both
/// auxiliary spectra, all living on the same boundary discretization.
struct CompatibilityContext {
  std::shared_ptr<const Spectrum> spec0;   // k=2, ell=0
  std::shared_ptr<const Spectrum> spec1;   // k=2, ell=1
  std::shared_ptr<const Spectrum> aux01;   // gamma_0 pinned, gamma_1 weighted
  std::shared_ptr<const Spectrum> aux10;   // gamma_1 pinned, gamma_0 weighted
  void validate() const;
};

struct RouteReport {
  // route 2: residual against g1, expanded in the (0,1) auxiliary basis;
  // route 23: residual against g0, expanded in the (1,0) auxiliary basis
  int route{2};
  TraceCoefficients residual_coeffs;
  double residual_l2{0.0};
  MembershipVerdict verdict;
};

struct CompatibilityReport {
  RouteReport route_a;
  RouteReport route_b;
  MembershipVerdict::State verdict{MembershipVerdict::State::undecided};
  bool routes_consistent{true};
};

/// Tests whether (g0, g1) is the total trace of an H^2 field by forming the
/// trace residual of one family against the other and classifying its
/// membership in the auxiliary trace space. Both routes are evaluated and
/// must not contradict.
CompatibilityReport check_pair(const TracePair& pair, const CompatibilityContext& ctx,
                               std::size_t n, const MembershipOptions& opts = {});

TracePair zero_pair(const CompatibilityContext& ctx);

/// Per-side views of one boundary function over param.side_ranges.
struct SideSamples {
  std::shared_ptr<const BoundaryParam> param;
  std::vector<Eigen::VectorXd> values;        // one vector per side
  std::vector<std::vector<double>> arclengths;  // node positions per side
};

SideSamples split_sides(const BoundarySamples& g);

struct VertexReport {
  int vertex{0};
  double vertex_arclength{0.0};
  std::vector<std::pair<double, double>> estimates;  // (sigma_min, integral)
  LinearFit fit;  // estimate against log(1/sigma_min)
  enum class Class { finite, divergent, undecided } classification{Class::undecided};
};

/// Vertex test at p=2: the log-weighted mismatch integral
/// int_0^delta |g_next(V + s) - g_prev(V - s)|^2 / s ds evaluated at dyadic
/// lower cutoffs. Steady growth against log(1/cutoff) flags divergence.
std::vector<VertexReport> vertex_compat_p2(const SideSamples& sides, double delta);

struct GeymonatReport {
  SeminormEstimate component_x;
  SeminormEstimate component_y;
  BoundarySamples field;  // the rotated-gradient field at the nodes (2 columns)
  bool compatible{false};
};

/// Builds v = (d_t g0) t + g1 nu at the boundary nodes (tangential derivative
/// by one-sided/central differences within each side) and reports whether the
/// componentwise fractional seminorm stays bounded under refinement.
GeymonatReport geymonat_check(const BoundarySamples& g0, const BoundarySamples& g1);

}  // namespace steklov
