#include "steklov/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "steklov/asymptotics.hpp"
#include "steklov/besov_oracle.hpp"
#include "steklov/compatibility.hpp"
#include "steklov/disk_spectral.hpp"
#include "steklov/fem.hpp"
#include "steklov/log.hpp"
#include "steklov/trace_spaces.hpp"
#include "steklov/util.hpp"

namespace steklov {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok{true};
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

SteklovProblemSpec disk_spec(int k, int ell) {
  SteklovProblemSpec s;
  s.k = k;
  s.ell = ell;
  s.domain = DiskDomain{1.0, {0.0, 0.0}};
  return s;
}

SteklovProblemSpec mesh_spec(int k, int ell, const MeshGeometry& geom) {
  SteklovProblemSpec s;
  s.k = k;
  s.ell = ell;
  s.domain = geom.mesh;
  return s;
}

// shared heavyweight solves
struct Cache {
  std::shared_ptr<const Spectrum> disk_k1_big;     // 201 eigenvalues
  std::shared_ptr<const Spectrum> disk_k1_deep;    // Hadamard depth
  std::shared_ptr<const Spectrum> disk_k2_l0;
  std::shared_ptr<const Spectrum> disk_k2_l1;
  CompatibilityContext compat;
};

// divergence detector for dyadic partial sums against log N, the same rule the
// seminorm oracle applies to its refinement levels
bool log_divergent(const std::vector<std::pair<std::size_t, double>>& sums) {
  if (sums.size() < 4) return false;
  std::vector<double> x, y;
  for (const auto& [n, s] : sums) {
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(s);
  }
  const LinearFit fit = linear_fit(x, y);
  const double rel = y.back() > 0.0 ? fit.slope * std::log(2.0) / y.back() : 0.0;
  return fit.slope > 0.0 && fit.r_squared > 0.95 && rel > 0.02;
}

CriterionResult criterion_1(Cache& cache) {
  CriterionResult r{1, "disk Laplace Steklov: analytic values and FEM cross-check", false,
                    false, "", 0.0};
  const auto t0 = Clock::now();
  Check c;
  for (double radius : {1.0, 2.0}) {
    const Spectrum s = laplace_steklov_disk(radius, 50);
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double expected = (j == 0) ? 0.0 : std::floor((j + 1) / 2.0) / radius;
      if (std::abs(s.eigenvalues[j] - expected) > 1e-12) {
        c.expect(false, "sigma_" + std::to_string(j + 1) + " off by more than 1e-12 at R=" +
                            fmt17(radius));
        break;
      }
    }
  }
  const MeshGeometry g = build_polygon_disk_mesh(1.0, 4);
  const Spectrum fem = steklov_fem(mesh_spec(1, 0, g), g, 7);
  const double expected[7] = {0, 1, 1, 2, 2, 3, 3};
  for (int j = 0; j < 7; ++j) {
    if (expected[j] == 0.0) {
      c.expect(std::abs(fem.eigenvalues[j]) <= 1e-8, "fem sigma_1 not clamped to zero");
    } else {
      c.expect(std::abs(fem.eigenvalues[j] - expected[j]) <= 0.02 * expected[j],
               "fem sigma_" + std::to_string(j + 1) + " misses 2%");
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  c.expect(r.seconds < 10.0, "runtime exceeded 10 s");
  c.note("max fem rel err " +
         fmt17(std::abs(fem.eigenvalues[1] - 1.0)) + " at sigma_2");
  r.pass = c.ok;
  r.detail = c.detail.str();
  (void)cache;
  return r;
}

CriterionResult criterion_2(Cache& cache) {
  CriterionResult r{2, "k=2 kernel facts on disk and square", false, false, "", 0.0};
  const auto t0 = Clock::now();
  Check c;
  auto kernel_facts = [&](const Spectrum& s0, const Spectrum& s1, const std::string& dom) {
    c.expect(s0.eigenvalues[0] <= 1e-8 * s0.eigenvalues[1],
             dom + ": sigma_1(l=0) not zero relative to sigma_2");
    c.expect(s0.multiplicity_groups[0].end - s0.multiplicity_groups[0].begin == 1,
             dom + ": zero eigenvalue not simple");
    const Eigen::VectorXd g0 = s0.trace(0, 0);
    double dev = 0.0;
    for (int i = 0; i < g0.size(); ++i) dev = std::max(dev, std::abs(g0[i] - g0[0]));
    c.expect(dev <= 1e-7 * std::abs(g0[0]), dom + ": first eigenfunction not constant");
    c.expect(s0.trace(1, 0).cwiseAbs().maxCoeff() <= 1e-7, dom + ": gamma_1 of constant not 0");
    c.expect(s1.eigenvalues[0] > 1e-6, dom + ": sigma_1(l=1) not positive");
  };
  kernel_facts(*cache.disk_k2_l0, *cache.disk_k2_l1, "disk");
  const MeshGeometry sq = build_rect_mesh(1.0, 1.0, 6, 6, ElementType::c1_rectangle);
  const Spectrum sq0 = steklov_fem(mesh_spec(2, 0, sq), sq, 21);
  const Spectrum sq1 = steklov_fem(mesh_spec(2, 1, sq), sq, 21);
  kernel_facts(sq0, sq1, "square");
  const KernelCheckResult k0 = polynomial_kernel_check(2, 0, 1.0);
  c.expect(k0.kernel.size() == 1 && k0.kernel[0].name == "1",
           "polynomial checker: l=0 kernel is not exactly the constants");
  c.expect(polynomial_kernel_check(2, 1, 1.0).kernel.empty(),
           "polynomial checker: l=1 kernel not empty");
  r.pass = c.ok;
  r.detail = c.detail.str();
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

CriterionResult criterion_3(Cache& cache) {
  CriterionResult r{3, "Hilbert-basis grams within 1e-8 for the first 20 modes", false, false,
                    "", 0.0};
  const auto t0 = Clock::now();
  Check c;
  double worst = 0.0;
  auto gram = [&](const Spectrum& s, const std::string& which) {
    const SpectrumDiagnostics d = s.verify(20);
    worst = std::max({worst, d.l2_gram_deviation, d.hk_gram_deviation});
    c.expect(d.l2_gram_deviation <= 1e-8, which + ": trace gram off");
    c.expect(d.hk_gram_deviation <= 1e-8, which + ": eigenvector gram off");
  };
  gram(*cache.disk_k1_big, "disk k1");
  gram(*cache.disk_k2_l0, "disk k2 l0");
  gram(*cache.disk_k2_l1, "disk k2 l1");
  gram(*cache.compat.aux01, "disk aux(0,1)");
  gram(*cache.compat.aux10, "disk aux(1,0)");
  const MeshGeometry sq1 = build_rect_mesh(1.0, 1.0, 8, 8, ElementType::p1_triangle);
  gram(steklov_fem(mesh_spec(1, 0, sq1), sq1, 20), "square k1");
  const MeshGeometry sq2 = build_rect_mesh(1.0, 1.0, 6, 6, ElementType::c1_rectangle);
  gram(steklov_fem(mesh_spec(2, 0, sq2), sq2, 20), "square k2 l0");
  gram(steklov_fem(mesh_spec(2, 1, sq2), sq2, 20), "square k2 l1");
  gram(solve_auxiliary_fem(sq2, 0, 1, 20), "square aux(0,1)");
  gram(solve_auxiliary_fem(sq2, 1, 0, 20), "square aux(1,0)");
  c.note("worst deviation " + fmt17(worst));
  r.pass = c.ok;
  r.detail = c.detail.str();
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

CriterionResult criterion_4(Cache& cache) {
  CriterionResult r{4, "extension round-trip on 100 random coefficient vectors", false, false,
                    "", 0.0};
  const auto t0 = Clock::now();
  Check c;
  std::mt19937 rng(20260808);
  std::normal_distribution<double> dist;
  double worst = 0.0;
  auto roundtrip = [&](const std::shared_ptr<const Spectrum>& spec, int reps,
                       const std::string& which) {
    for (int rep = 0; rep < reps; ++rep) {
      TraceCoefficients coef;
      coef.basis = spec;
      for (int j = 0; j < 10; ++j) coef.coeffs.push_back(dist(rng));
      const Field eg = extend(coef);
      const BoundarySamples tr = trace_samples(*spec, eg, spec->problem.ell);
      const TraceCoefficients back = boundary_expand(tr, spec, 10);
      for (int j = 0; j < 10; ++j) {
        worst = std::max(worst, std::abs(back.coeffs[j] - coef.coeffs[j]));
      }
    }
    c.expect(worst <= 1e-8, which + ": round-trip error above 1e-8");
  };
  roundtrip(cache.disk_k1_big, 100, "disk k1");
  roundtrip(cache.disk_k2_l0, 100, "disk k2 l0");
  roundtrip(cache.disk_k2_l1, 100, "disk k2 l1");
  const MeshGeometry sq1 = build_rect_mesh(1.0, 1.0, 8, 8, ElementType::p1_triangle);
  roundtrip(std::make_shared<Spectrum>(steklov_fem(mesh_spec(1, 0, sq1), sq1, 12)), 100,
            "square k1");
  const MeshGeometry sq2 = build_rect_mesh(1.0, 1.0, 5, 5, ElementType::c1_rectangle);
  for (int ell : {0, 1}) {
    roundtrip(std::make_shared<Spectrum>(steklov_fem(mesh_spec(2, ell, sq2), sq2, 12)), 100,
              "square k2 l" + std::to_string(ell));
  }
  c.note("worst error " + fmt17(worst));
  r.pass = c.ok;
  r.detail = c.detail.str();
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

CriterionResult criterion_5(Cache& cache) {
  CriterionResult r{5, "Weyl exponents and the harmonic law constant", false, false, "", 0.0};
  const auto t0 = Clock::now();
  Check c;
  const WeylFit f1 = weyl_fit(*cache.disk_k1_big, 10, 200);
  c.expect(std::abs(f1.exponent - 1.0) <= 0.05, "k1 exponent outside 1.00 +- 0.05");
  c.expect(std::abs(f1.constant - 0.5) <= 0.05, "k1 constant outside 0.5 +- 10%");
  const WeylFit f20 = weyl_fit(*cache.disk_k2_l0, 10, 200);
  c.expect(std::abs(f20.exponent - 3.0) <= 0.3, "k2 l0 exponent outside 3 +- 0.3");
  const WeylFit f21 = weyl_fit(*cache.disk_k2_l1, 10, 200);
  c.expect(std::abs(f21.exponent - 1.0) <= 0.1, "k2 l1 exponent outside 1 +- 0.1");
  c.note("exponents " + fmt17(f1.exponent) + ", " + fmt17(f20.exponent) + ", " +
         fmt17(f21.exponent) + "; k1 constant " + fmt17(f1.constant));
  r.pass = c.ok;
  r.detail = c.detail.str();
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

CriterionResult criterion_6(Cache& cache, const AcceptanceOptions& opts) {
  CriterionResult r{6, "Hadamard counterexample at N = 10^4", false, false, "", 0.0};
  const auto t0 = Clock::now();
  Check c;
  const Spectrum& basis = *cache.disk_k1_deep;
  const std::size_t full = basis.size();  // 2 * 10^4 + 1 coefficients
  const std::size_t n_max =
      opts.truncation_override > 0 ? std::min<std::size_t>(opts.truncation_override, full) : full;
  const MembershipVerdict l2 =
      classify_membership(&hadamard_coefficient_at, WeightScheme::HsA(0.0), basis, n_max);
  const MembershipVerdict h12 =
      classify_membership(&hadamard_coefficient_at, WeightScheme::HsA(0.5), basis, n_max);
  const bool undecided = l2.verdict == MembershipVerdict::State::undecided ||
                         h12.verdict == MembershipVerdict::State::undecided;
  c.expect(l2.verdict == MembershipVerdict::State::in, "L2 verdict is not 'in'");
  c.expect(h12.verdict == MembershipVerdict::State::out, "H^{1/2}_A verdict is not 'out'");
  c.expect(std::abs(h12.growth_exponent - 0.5) <= 0.1,
           "divergence exponent outside 0.5 +- 0.1");
  c.note("fit exponent " + fmt17(h12.growth_exponent) + " (r2 " + fmt17(h12.growth_r2) + ")");
  r.pass = c.ok;
  r.soft = !c.ok && undecided && opts.truncation_override > 0;
  r.detail = c.detail.str();
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

CriterionResult criterion_7(Cache& cache) {
  CriterionResult r{7, "norm equivalence against the Gagliardo oracle", false, false, "", 0.0};
  const auto t0 = Clock::now();
  Check c;
  const auto spec = cache.disk_k1_big;
  const BoundaryParam& bp = *spec->boundary;
  const std::size_t m = bp.n_nodes();
  double ratio_min = 1e300, ratio_max = 0.0;
  auto run_fn = [&](const std::function<double(double)>& f) {
    Eigen::VectorXd v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = f(bp.node_arclengths[i]);
    const BoundarySamples g = make_samples(spec->boundary, v);
    double l2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) l2 += bp.node_weights[i] * v[i] * v[i];
    const SeminormEstimate semi = gagliardo_seminorm(g, 0.5, 2.0);
    const TraceCoefficients coef = boundary_expand(g, spec, 60);
    const double hsa = std::sqrt(weighted_norm(coef, WeightScheme::HsA(0.5)));
    const double gag = std::sqrt(l2 + semi.extrapolated);
    const double ratio = hsa / gag;
    ratio_min = std::min(ratio_min, ratio);
    ratio_max = std::max(ratio_max, ratio);
    c.expect(!semi.divergent, "trig function misclassified as divergent");
  };
  run_fn([](double) { return 1.0; });
  for (int n = 1; n <= 20; ++n) {
    run_fn([n](double t) { return std::cos(n * t); });
    run_fn([n](double t) { return std::sin(n * t); });
  }
  c.expect(ratio_max / ratio_min <= 20.0, "equivalence band wider than 20");
  c.note("band [" + fmt17(ratio_min) + ", " + fmt17(ratio_max) + "]");

  // the step function diverges under both norms
  Eigen::VectorXd sv(m);
  for (std::size_t i = 0; i < m; ++i) sv[i] = bp.node_arclengths[i] < M_PI ? 1.0 : -1.0;
  const BoundarySamples step = make_samples(spec->boundary, sv);
  c.expect(gagliardo_seminorm(step, 0.5, 2.0).divergent, "Gagliardo missed the step");
  std::vector<std::pair<std::size_t, double>> sums;
  const TraceCoefficients sc = boundary_expand(step, spec, spec->size());
  for (std::size_t n = 4; n <= sc.coeffs.size(); n *= 2) {
    TraceCoefficients head;
    head.basis = spec;
    head.coeffs.assign(sc.coeffs.begin(), sc.coeffs.begin() + static_cast<long>(n));
    sums.push_back({n, weighted_norm(head, WeightScheme::HsA(0.5))});
  }
  c.expect(log_divergent(sums), "Steklov norm partial sums missed the step divergence");
  r.pass = c.ok;
  r.detail = c.detail.str();
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

CriterionResult criterion_8(Cache& cache, const AcceptanceOptions& opts) {
  CriterionResult r{8, "compatibility: 21 good pairs pass, 5 rough pairs fail", false, false,
                    "", 0.0};
  const auto t0 = Clock::now();
  Check c;
  const CompatibilityContext& ctx = cache.compat;
  const std::size_t n = opts.truncation_override > 0
                            ? std::min<std::size_t>(opts.truncation_override, 96)
                            : 96;
  bool any_undecided = false;
  auto record = [&](const CompatibilityReport& rep, bool expect_pass, const std::string& which) {
    c.expect(rep.routes_consistent, which + ": routes contradict");
    if (rep.verdict == MembershipVerdict::State::undecided) any_undecided = true;
    if (expect_pass) {
      c.expect(rep.verdict == MembershipVerdict::State::in, which + ": not compatible");
    } else {
      c.expect(rep.verdict == MembershipVerdict::State::out, which + ": rough pair not rejected");
    }
  };
  record(check_pair(zero_pair(ctx), ctx, n), true, "zero pair");
  const std::size_t nodes = ctx.spec0->boundary->n_nodes();
  auto samples = [&](const Eigen::VectorXd& v) {
    BoundarySamples s;
    s.param = ctx.spec0->boundary;
    s.values = v;
    return s;
  };
  // 20 pairs from genuine H^2 fields: eigenfunctions of both families and
  // fields with a pinned value trace
  for (std::size_t j = 0; j < 8; ++j) {
    TracePair p;
    p.g0 = samples(ctx.spec0->trace(0, j));
    p.g1 = samples(ctx.spec0->trace(1, j));
    record(check_pair(p, ctx, n), true, "l0 eigenpair " + std::to_string(j));
  }
  for (std::size_t j = 0; j < 8; ++j) {
    TracePair p;
    p.g0 = samples(ctx.spec1->trace(0, j));
    p.g1 = samples(ctx.spec1->trace(1, j));
    record(check_pair(p, ctx, n), true, "l1 eigenpair " + std::to_string(j));
  }
  for (int mode : {0, 1, 2, 4}) {
    Eigen::VectorXd g1(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      g1[i] = -2.0 * std::cos(mode * ctx.spec0->boundary->node_arclengths[i]);
    }
    TracePair p;
    p.g0 = samples(Eigen::VectorXd::Zero(nodes));
    p.g1 = samples(g1);
    record(check_pair(p, ctx, n), true, "pinned-trace field mode " + std::to_string(mode));
  }
  // 5 synthetic rough pairs
  for (int v = 0; v < 5; ++v) {
    const double expo = -0.52 - 0.03 * v;
    Eigen::VectorXd g1 = Eigen::VectorXd::Zero(nodes);
    for (int mode = 1; mode <= 45; ++mode) {
      const double coeff = std::pow(static_cast<double>(mode), expo);
      for (std::size_t i = 0; i < nodes; ++i) {
        g1[i] += coeff * std::cos(mode * ctx.spec0->boundary->node_arclengths[i]);
      }
    }
    TracePair p;
    p.g0 = samples(Eigen::VectorXd::Zero(nodes));
    p.g1 = samples(g1);
    record(check_pair(p, ctx, n), false, "rough pair " + std::to_string(v));
  }
  r.pass = c.ok;
  r.soft = !c.ok && any_undecided && opts.truncation_override > 0;
  r.detail = c.detail.str();
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

CriterionResult criterion_9(Cache& cache) {
  CriterionResult r{9, "auxiliary disk spectrum reproduces eta_n = 2n + 1", false, false, "",
                    0.0};
  const auto t0 = Clock::now();
  Check c;
  const Spectrum& aux = *cache.compat.aux01;
  double worst = 0.0;
  for (int n = 0; n <= 10; ++n) {
    const double expected = 2.0 * n + 1.0;
    const std::size_t first = (n == 0) ? 0 : static_cast<std::size_t>(2 * n - 1);
    const std::size_t count = (n == 0) ? 1 : 2;
    for (std::size_t j = first; j < first + count; ++j) {
      worst = std::max(worst, std::abs(aux.eigenvalues[j] - expected));
    }
  }
  c.expect(worst <= 1e-6, "weak-form eta misses the strong-form value by more than 1e-6");
  c.note("worst |eta - (2n+1)| = " + fmt17(worst));
  r.pass = c.ok;
  r.detail = c.detail.str();
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

CriterionResult criterion_10(const std::vector<CriterionResult>& done) {
  CriterionResult r{10,
                    "function-space equalities covered by finite-truncation surrogates",
                    false, false, "", 0.0};
  bool surrogates = true;
  for (int id : {3, 4, 7, 8}) {
    for (const auto& d : done) {
      if (d.id == id && !d.pass) surrogates = false;
    }
  }
  r.pass = surrogates;
  r.detail = surrogates
                 ? "set equalities are not decidable at finite truncation; criteria 3, 4, 7, 8 "
                   "stand in for them"
                 : "a surrogate criterion failed";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  Cache cache;
  DiskSolveOptions oset;
  oset.n_boundary_samples = 2048;
  cache.disk_k1_big = std::make_shared<Spectrum>(laplace_steklov_disk(1.0, 100, oset));
  cache.disk_k1_deep = std::make_shared<Spectrum>(laplace_steklov_disk(1.0, 10000));
  cache.disk_k2_l0 = std::make_shared<Spectrum>(biharmonic_steklov_disk(disk_spec(2, 0), 200, oset));
  cache.disk_k2_l1 = std::make_shared<Spectrum>(biharmonic_steklov_disk(disk_spec(2, 1), 200, oset));
  cache.compat.spec0 = cache.disk_k2_l0;
  cache.compat.spec1 = cache.disk_k2_l1;
  cache.compat.aux01 =
      std::make_shared<Spectrum>(disk_auxiliary_spectrum(1.0, 0, 1, 96, oset));
  cache.compat.aux10 =
      std::make_shared<Spectrum>(disk_auxiliary_spectrum(1.0, 1, 0, 96, oset));

  std::vector<CriterionResult> results;
  results.push_back(criterion_1(cache));
  results.push_back(criterion_2(cache));
  results.push_back(criterion_3(cache));
  results.push_back(criterion_4(cache));
  results.push_back(criterion_5(cache));
  results.push_back(criterion_6(cache, opts));
  results.push_back(criterion_7(cache));
  results.push_back(criterion_8(cache, opts));
  results.push_back(criterion_9(cache));
  results.push_back(criterion_10(results));
  return results;
}

int report_acceptance(const std::vector<CriterionResult>& results, std::FILE* out) {
  bool all_pass = true;
  for (const auto& r : results) {
    const char* tag = r.pass ? "PASS" : (r.soft ? "SOFT-FAIL" : "FAIL");
    if (!r.pass) all_pass = false;
    std::fprintf(out, "%-9s criterion %2d: %s (%.2fs)%s%s\n", tag, r.id, r.name.c_str(),
                 r.seconds, r.detail.empty() ? "" : " -- ", r.detail.c_str());
  }
  return all_pass ? 0 : 4;
}

}  // namespace steklov
