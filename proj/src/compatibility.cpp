#include "steklov/compatibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "steklov/quadrature.hpp"

namespace steklov {

namespace {

bool same_nodes(const BoundaryParam& a, const BoundaryParam& b) {
  return a.n_nodes() == b.n_nodes() &&
         std::abs(a.total_length - b.total_length) <= 1e-12 * (1.0 + a.total_length);
}

// component as sampled values on the shared nodes
Eigen::VectorXd component_samples(const std::variant<BoundarySamples, TraceCoefficients>& g,
                                  const std::shared_ptr<const Spectrum>& spec, std::size_t n) {
  if (const auto* s = std::get_if<BoundarySamples>(&g)) {
    if (!s->param || !same_nodes(*s->param, *spec->boundary)) {
      throw std::invalid_argument("check_pair: samples live on a different boundary");
    }
    return s->values.col(0);
  }
  const auto& c = std::get<TraceCoefficients>(g);
  if (!c.basis || c.basis->basis_id != spec->basis_id) {
    throw std::invalid_argument("check_pair: coefficients expanded in a different basis");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(spec->boundary->n_nodes());
  const std::size_t upto = std::min(n, c.coeffs.size());
  for (std::size_t j = 0; j < upto; ++j) {
    if (c.coeffs[j] != 0.0) out += c.coeffs[j] * spec->normalized_trace(j);
  }
  return out;
}

// component in its own normalized-trace basis
std::vector<double> component_coeffs(const std::variant<BoundarySamples, TraceCoefficients>& g,
                                     const std::shared_ptr<const Spectrum>& spec,
                                     std::size_t n) {
  if (const auto* c = std::get_if<TraceCoefficients>(&g)) {
    if (!c->basis || c->basis->basis_id != spec->basis_id) {
      throw std::invalid_argument("check_pair: coefficients expanded in a different basis");
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 0; j < std::min(n, c->coeffs.size()); ++j) out[j] = c->coeffs[j];
    return out;
  }
  const auto& s = std::get<BoundarySamples>(g);
  if (!s.param || !same_nodes(*s.param, *spec->boundary)) {
    throw std::invalid_argument("check_pair: samples live on a different boundary");
  }
  BoundarySamples scalar;
  scalar.param = spec->boundary;
  scalar.values = s.values.col(0);
  return boundary_expand(scalar, spec, n).coeffs;
}

RouteReport run_route(int route_tag, const std::vector<double>& source_coeffs,
                      const Eigen::VectorXd& target_samples,
                      const std::shared_ptr<const Spectrum>& source_spec, int target_order,
                      const std::shared_ptr<const Spectrum>& aux, std::size_t n,
                      const MembershipOptions& opts) {
  // residual = sum_j sqrt(1 + sigma_j) a_j gamma_m(u_j) - target
  Eigen::VectorXd residual = -target_samples;
  for (std::size_t j = 0; j < source_coeffs.size(); ++j) {
    if (source_coeffs[j] == 0.0) continue;
    residual += std::sqrt(1.0 + source_spec->eigenvalues[j]) * source_coeffs[j] *
                source_spec->trace(target_order, j);
  }
  RouteReport rep;
  rep.route = route_tag;
  BoundarySamples rs;
  rs.param = aux->boundary;
  rs.values = residual;
  const std::size_t n_aux = std::min(n, aux->size());
  rep.residual_coeffs = boundary_expand(rs, aux, n_aux);
  double l2 = 0.0;
  for (std::size_t i = 0; i < aux->boundary->n_nodes(); ++i) {
    l2 += aux->boundary->node_weights[i] * residual[i] * residual[i];
  }
  rep.residual_l2 = std::sqrt(l2);
  const auto& coeffs = rep.residual_coeffs.coeffs;
  rep.verdict = classify_membership(
      [&coeffs](std::size_t j) { return j <= coeffs.size() ? coeffs[j - 1] : 0.0; },
      [&aux](std::size_t j) { return 1.0 + aux->eigenvalues[j - 1]; }, n_aux, opts);
  return rep;
}

}  // namespace

void CompatibilityContext::validate() const {
  if (!spec0 || !spec1 || !aux01 || !aux10) {
    throw std::invalid_argument("CompatibilityContext: all four spectra are required");
  }
  if (spec0->problem.k != 2 || spec0->problem.ell != 0 || spec0->auxiliary_indices) {
    throw std::invalid_argument("CompatibilityContext: spec0 must be the k=2, ell=0 family");
  }
  if (spec1->problem.k != 2 || spec1->problem.ell != 1 || spec1->auxiliary_indices) {
    throw std::invalid_argument("CompatibilityContext: spec1 must be the k=2, ell=1 family");
  }
  if (!aux01->auxiliary_indices || *aux01->auxiliary_indices != std::pair<int, int>{0, 1}) {
    throw std::invalid_argument("CompatibilityContext: aux01 must pin gamma_0, weight gamma_1");
  }
  if (!aux10->auxiliary_indices || *aux10->auxiliary_indices != std::pair<int, int>{1, 0}) {
    throw std::invalid_argument("CompatibilityContext: aux10 must pin gamma_1, weight gamma_0");
  }
  if (!same_nodes(*spec0->boundary, *spec1->boundary) ||
      !same_nodes(*spec0->boundary, *aux01->boundary) ||
      !same_nodes(*spec0->boundary, *aux10->boundary)) {
    throw std::invalid_argument("CompatibilityContext: spectra on different boundary nodes");
  }
}

TracePair zero_pair(const CompatibilityContext& ctx) {
  ctx.validate();
  TracePair p;
  BoundarySamples z0;
  z0.param = ctx.spec0->boundary;
  z0.values = Eigen::VectorXd::Zero(ctx.spec0->boundary->n_nodes());
  p.g0 = z0;
  p.g1 = z0;
  return p;
}

CompatibilityReport check_pair(const TracePair& pair, const CompatibilityContext& ctx,
                               std::size_t n, const MembershipOptions& opts) {
  ctx.validate();
  if (n < 1) throw std::invalid_argument("check_pair: truncation must be >= 1");
  const std::size_t n0 = std::min(n, ctx.spec0->size());
  const std::size_t n1 = std::min(n, ctx.spec1->size());

  const std::vector<double> g0_coeffs = component_coeffs(pair.g0, ctx.spec0, n0);
  const std::vector<double> g1_coeffs = component_coeffs(pair.g1, ctx.spec1, n1);
  const Eigen::VectorXd g0_samples = component_samples(pair.g0, ctx.spec0, n0);
  const Eigen::VectorXd g1_samples = component_samples(pair.g1, ctx.spec1, n1);

  CompatibilityReport rep;
  rep.route_a = run_route(2, g0_coeffs, g1_samples, ctx.spec0, 1, ctx.aux01, n, opts);
  rep.route_b = run_route(23, g1_coeffs, g0_samples, ctx.spec1, 0, ctx.aux10, n, opts);

  using State = MembershipVerdict::State;
  const State a = rep.route_a.verdict.verdict;
  const State b = rep.route_b.verdict.verdict;
  rep.routes_consistent = !((a == State::in && b == State::out) ||
                            (a == State::out && b == State::in));
  if (!rep.routes_consistent) {
    rep.verdict = State::undecided;
  } else if (a == State::in || b == State::in) {
    rep.verdict = State::in;
  } else if (a == State::out || b == State::out) {
    rep.verdict = State::out;
  } else {
    rep.verdict = State::undecided;
  }
  return rep;
}

SideSamples split_sides(const BoundarySamples& g) {
  if (!g.param) throw std::invalid_argument("split_sides: samples without a parameterization");
  SideSamples out;
  out.param = g.param;
  const auto& ranges = g.param->side_ranges;
  out.values.resize(ranges.size());
  out.arclengths.resize(ranges.size());
  for (std::size_t side = 0; side < ranges.size(); ++side) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < g.param->n_nodes(); ++i) {
      double s = g.param->node_arclengths[i];
      // the final side may wrap past the total length
      if (ranges[side].second > g.param->total_length && s < ranges[side].first) {
        s += g.param->total_length;
      }
      if (s >= ranges[side].first && s < ranges[side].second) {
        out.arclengths[side].push_back(s);
        vals.push_back(g.values(static_cast<Eigen::Index>(i), 0));
      }
    }
    out.values[side] = Eigen::Map<Eigen::VectorXd>(vals.data(),
                                                   static_cast<Eigen::Index>(vals.size()));
  }
  return out;
}

namespace {

// piecewise-linear evaluation within one side; queries must stay inside the
// sampled range
double eval_side(const SideSamples& sides, std::size_t side, double s) {
  const auto& xs = sides.arclengths[side];
  const auto& ys = sides.values[side];
  if (xs.size() < 2) throw std::invalid_argument("vertex_compat_p2: side with too few samples");
  auto it = std::upper_bound(xs.begin(), xs.end(), s);
  std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  if (hi == 0) hi = 1;
  if (hi >= xs.size()) hi = xs.size() - 1;
  const std::size_t lo = hi - 1;
  const double t = (s - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[static_cast<Eigen::Index>(lo)] +
         t * (ys[static_cast<Eigen::Index>(hi)] - ys[static_cast<Eigen::Index>(lo)]);
}

}  // namespace

std::vector<VertexReport> vertex_compat_p2(const SideSamples& sides, double delta) {
  if (!sides.param) throw std::invalid_argument("vertex_compat_p2: missing parameterization");
  const BoundaryParam& bp = *sides.param;
  if (bp.vertex_positions.empty()) {
    throw std::invalid_argument("vertex_compat_p2: boundary has no vertices");
  }
  if (!(delta > 0.0)) throw std::invalid_argument("vertex_compat_p2: delta must be positive");
  const std::size_t n_sides = bp.side_ranges.size();
  const GaussRule& rule = gauss_rule(8);

  std::vector<VertexReport> reports;
  for (std::size_t v = 0; v < bp.vertex_positions.size(); ++v) {
    // vertex v sits at the start of side v and the end of side v-1
    const std::size_t side_next = v;
    const std::size_t side_prev = (v + n_sides - 1) % n_sides;
    const double a = bp.vertex_positions[v];

    // resolvable window: stay strictly inside both sides' sampled ranges
    double gap_next = 0.0, gap_prev = 0.0;
    {
      const auto& xs = sides.arclengths[side_next];
      for (std::size_t i = 1; i < xs.size(); ++i) gap_next = std::max(gap_next, xs[i] - xs[i - 1]);
      const auto& xp = sides.arclengths[side_prev];
      for (std::size_t i = 1; i < xp.size(); ++i) gap_prev = std::max(gap_prev, xp[i] - xp[i - 1]);
    }
    const double side_len_next = bp.side_ranges[side_next].second - bp.side_ranges[side_next].first;
    const double side_len_prev = bp.side_ranges[side_prev].second - bp.side_ranges[side_prev].first;
    const double d = std::min({delta, 0.45 * side_len_next, 0.45 * side_len_prev});
    const double sigma_floor = 2.0 * std::max(gap_next, gap_prev);

    VertexReport rep;
    rep.vertex = static_cast<int>(v);
    rep.vertex_arclength = a;

    // evaluate g on side_next at a + s and on side_prev at a - s, with the
    // final side handled through its wrapped coordinates
    auto next_at = [&](double s) {
      double q = a + s;
      if (bp.side_ranges[side_next].second > bp.total_length &&
          q < bp.side_ranges[side_next].first) {
        q += bp.total_length;
      }
      return eval_side(sides, side_next, q);
    };
    auto prev_at = [&](double s) {
      double q = a - s;
      if (v == 0) q += bp.total_length;  // the side before vertex 0 wraps
      return eval_side(sides, side_prev, q);
    };

    // dyadic lower cutoffs
    std::vector<double> cutoffs;
    for (double c = d / 2.0; c >= sigma_floor; c *= 0.5) cutoffs.push_back(c);
    if (cutoffs.size() < 4) {
      rep.classification = VertexReport::Class::undecided;
      reports.push_back(std::move(rep));
      continue;
    }
    // integral over each dyadic band, accumulated from the outermost band in
    double acc = 0.0;
    double upper = d;
    for (double c : cutoffs) {
      double band = 0.0;
      const double len = upper - c;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double s = c + rule.nodes[q] * len;
        const double diff = next_at(s) - prev_at(s);
        band += rule.weights[q] * len * diff * diff / s;
      }
      acc += band;
      rep.estimates.push_back({c, acc});
      upper = c;
    }
    std::vector<double> x, y;
    for (const auto& [c, val] : rep.estimates) {
      x.push_back(std::log(1.0 / c));
      y.push_back(val);
    }
    rep.fit = linear_fit(x, y);
    if (rep.fit.slope > 0.1 && rep.fit.r_squared > 0.95) {
      rep.classification = VertexReport::Class::divergent;
    } else {
      const double last = y.back();
      const double prev = y[y.size() - 2];
      if (std::abs(last - prev) <= 0.05 * (1.0 + std::abs(last))) {
        rep.classification = VertexReport::Class::finite;
      } else {
        rep.classification = VertexReport::Class::undecided;
      }
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

GeymonatReport geymonat_check(const BoundarySamples& g0, const BoundarySamples& g1) {
  if (!g0.param || !g1.param || !same_nodes(*g0.param, *g1.param)) {
    throw std::invalid_argument("geymonat_check: components on different boundaries");
  }
  const BoundaryParam& bp = *g0.param;
  const std::size_t m = bp.n_nodes();

  // tangential derivative of g0 by finite differences within each side:
  // nodes sit strictly inside edges, so corners are never touched
  Eigen::VectorXd dt = Eigen::VectorXd::Zero(m);
  // group nodes by side
  std::vector<std::vector<std::size_t>> by_side(bp.side_ranges.size());
  for (std::size_t i = 0; i < m; ++i) {
    const double s = bp.node_arclengths[i];
    for (std::size_t side = 0; side < bp.side_ranges.size(); ++side) {
      double lo = bp.side_ranges[side].first, hi = bp.side_ranges[side].second;
      double q = s;
      if (hi > bp.total_length && q < lo) q += bp.total_length;
      if (q >= lo && q < hi) {
        by_side[side].push_back(i);
        break;
      }
    }
  }
  for (const auto& side_nodes : by_side) {
    const std::size_t ns = side_nodes.size();
    if (ns < 2) continue;
    for (std::size_t a = 0; a < ns; ++a) {
      const std::size_t i = side_nodes[a];
      if (a == 0) {
        const std::size_t j = side_nodes[1];
        dt[i] = (g0.values(j, 0) - g0.values(i, 0)) /
                (bp.node_arclengths[j] - bp.node_arclengths[i]);
      } else if (a + 1 == ns) {
        const std::size_t j = side_nodes[a - 1];
        dt[i] = (g0.values(i, 0) - g0.values(j, 0)) /
                (bp.node_arclengths[i] - bp.node_arclengths[j]);
      } else {
        const std::size_t jp = side_nodes[a + 1];
        const std::size_t jm = side_nodes[a - 1];
        dt[i] = (g0.values(jp, 0) - g0.values(jm, 0)) /
                (bp.node_arclengths[jp] - bp.node_arclengths[jm]);
      }
    }
  }

  GeymonatReport rep;
  rep.field.param = g0.param;
  rep.field.values.resize(m, 2);
  for (std::size_t i = 0; i < m; ++i) {
    const Point2 v = dt[i] * bp.node_tangents[i] + g1.values(i, 0) * bp.node_normals[i];
    rep.field.values(i, 0) = v.x();
    rep.field.values(i, 1) = v.y();
  }
  BoundarySamples cx, cy;
  cx.param = g0.param;
  cx.values = rep.field.values.col(0);
  cy.param = g0.param;
  cy.values = rep.field.values.col(1);
  rep.component_x = gagliardo_seminorm(cx, 0.5, 2.0);
  rep.component_y = gagliardo_seminorm(cy, 0.5, 2.0);
  rep.compatible = !rep.component_x.divergent && !rep.component_y.divergent;
  return rep;
}

}  // namespace steklov
