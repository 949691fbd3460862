// Command-line front end: spectra, expansions, compatibility checks, oracles,
// Weyl fits, and the full acceptance run. Options may come from a JSON config
// file (--config); explicit flags win. Exit codes: 1 invalid configuration,
// 2 solver failure, 3 invariant violation, 4 acceptance failures.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steklov/acceptance.hpp"
#include "steklov/asymptotics.hpp"
#include "steklov/besov_oracle.hpp"
#include "steklov/compatibility.hpp"
#include "steklov/disk_spectral.hpp"
#include "steklov/fem.hpp"
#include "steklov/log.hpp"
#include "steklov/serialization.hpp"
#include "steklov/trace_spaces.hpp"
#include "steklov/util.hpp"

namespace {

using steklov::log::info;
using json = nlohmann::json;

struct DomainSpec {
  enum class Kind { disk, rect, polydisk, mesh_file } kind{Kind::disk};
  double radius{1.0};
  int disk_samples{0};
  double lx{1.0}, ly{1.0};
  int nx{4}, ny{4};
  steklov::ElementType element{steklov::ElementType::p1_triangle};
  int refinement{2};
  std::string path;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

DomainSpec parse_domain(const std::string& text) {
  DomainSpec d;
  const auto head = split(text, ':');
  if (head.empty()) throw std::invalid_argument("domain: empty specification");
  if (head[0] == "disk") {
    d.kind = DomainSpec::Kind::disk;
    if (head.size() < 2) throw std::invalid_argument("domain: disk:R[:samples]");
    d.radius = std::stod(head[1]);
    if (head.size() > 2) d.disk_samples = std::stoi(head[2]);
  } else if (head[0] == "rect") {
    d.kind = DomainSpec::Kind::rect;
    if (head.size() < 2) throw std::invalid_argument("domain: rect:LX,LY,NX,NY[,p1|c1]");
    const auto parts = split(head[1], ',');
    if (parts.size() < 4) throw std::invalid_argument("domain: rect:LX,LY,NX,NY[,p1|c1]");
    d.lx = std::stod(parts[0]);
    d.ly = std::stod(parts[1]);
    d.nx = std::stoi(parts[2]);
    d.ny = std::stoi(parts[3]);
    if (parts.size() > 4) {
      if (parts[4] == "c1") {
        d.element = steklov::ElementType::c1_rectangle;
      } else if (parts[4] == "p1") {
        d.element = steklov::ElementType::p1_triangle;
      } else {
        throw std::invalid_argument("domain: element must be p1 or c1");
      }
    }
  } else if (head[0] == "polydisk") {
    d.kind = DomainSpec::Kind::polydisk;
    if (head.size() < 2) throw std::invalid_argument("domain: polydisk:R,REFINEMENT");
    const auto parts = split(head[1], ',');
    if (parts.size() < 2) throw std::invalid_argument("domain: polydisk:R,REFINEMENT");
    d.radius = std::stod(parts[0]);
    d.refinement = std::stoi(parts[1]);
  } else if (head[0] == "mesh") {
    d.kind = DomainSpec::Kind::mesh_file;
    if (head.size() < 2) throw std::invalid_argument("domain: mesh:PATH");
    d.path = text.substr(5);
    if (!std::filesystem::exists(d.path)) {
      throw std::invalid_argument("domain: mesh file does not exist: " + d.path);
    }
  } else {
    throw std::invalid_argument("domain: unknown kind " + head[0]);
  }
  return d;
}

steklov::MeshGeometry realize_mesh(const DomainSpec& d) {
  switch (d.kind) {
    case DomainSpec::Kind::rect:
      return steklov::build_rect_mesh(d.lx, d.ly, d.nx, d.ny, d.element);
    case DomainSpec::Kind::polydisk:
      return steklov::build_polygon_disk_mesh(d.radius, d.refinement);
    case DomainSpec::Kind::mesh_file: {
      auto mesh = std::make_shared<steklov::Mesh2D>(steklov::load_mesh_json(d.path));
      return steklov::MeshGeometry{mesh, steklov::derive_boundary(*mesh)};
    }
    default:
      throw std::invalid_argument("domain: expected a mesh domain, got a disk");
  }
}

std::map<int, double> parse_beta(const std::vector<std::string>& entries) {
  std::map<int, double> beta;
  for (const auto& e : entries) {
    const auto kv = split(e, '=');
    if (kv.size() != 2) throw std::invalid_argument("beta: expected j=value, got " + e);
    beta[std::stoi(kv[0])] = std::stod(kv[1]);
  }
  return beta;
}

/// --modes counts eigenvalues everywhere on the CLI; the k=1 disk solver works
/// in angular modes, so solve enough of them and cut the list down.
steklov::Spectrum truncate_spectrum(steklov::Spectrum spec, int n) {
  if (static_cast<std::size_t>(n) < spec.size()) {
    spec.eigenvalues.resize(n);
    spec.multiplicity_groups = steklov::group_multiplicities(spec.eigenvalues);
  }
  return spec;
}

/// Solves the requested problem and enforces the spectrum invariants before
/// anything is written.
steklov::Spectrum solve_problem(const DomainSpec& domain, int k, int ell,
                                const std::map<int, double>& beta, int modes,
                                std::optional<std::pair<int, int>> aux) {
  steklov::Spectrum spec;
  if (domain.kind == DomainSpec::Kind::disk) {
    steklov::DiskSolveOptions opts;
    opts.n_boundary_samples = domain.disk_samples;
    if (aux) {
      spec = steklov::disk_auxiliary_spectrum(domain.radius, aux->first, aux->second, modes,
                                              opts);
    } else if (k == 1) {
      const int angular = std::max(1, modes / 2);
      spec = truncate_spectrum(steklov::laplace_steklov_disk(domain.radius, angular, opts),
                               modes);
    } else {
      steklov::SteklovProblemSpec p;
      p.k = k;
      p.ell = ell;
      p.beta = beta;
      p.domain = steklov::DiskDomain{domain.radius, {0.0, 0.0}};
      spec = steklov::biharmonic_steklov_disk(p, modes, opts);
    }
  } else {
    const steklov::MeshGeometry geom = realize_mesh(domain);
    if (aux) {
      spec = steklov::solve_auxiliary_fem(geom, aux->first, aux->second, modes);
    } else {
      steklov::SteklovProblemSpec p;
      p.k = k;
      p.ell = ell;
      p.beta = beta;
      p.domain = geom.mesh;
      spec = steklov::steklov_fem(p, geom, modes);
    }
  }
  const auto diag = spec.verify(std::min<std::size_t>(20, spec.size()));
  if (diag.l2_gram_deviation > 1e-8 || diag.hk_gram_deviation > 1e-8) {
    throw steklov::InvariantViolation(
        "spectrum failed the Hilbert-basis check: trace gram deviation " +
        steklov::fmt17(diag.l2_gram_deviation) + ", eigenvector gram deviation " +
        steklov::fmt17(diag.hk_gram_deviation));
  }
  return spec;
}

// config value lookup for options the user did not pass explicitly
class ConfigMerge {
 public:
  explicit ConfigMerge(json cfg) : cfg_(std::move(cfg)) {}

  template <typename T>
  void fill(const CLI::Option* opt, const char* key, T& var) const {
    if (opt != nullptr && opt->count() > 0) return;
    if (cfg_.contains(key)) var = cfg_[key].get<T>();
  }

  bool flag(const CLI::Option* opt, const char* key, bool cli_value) const {
    if (opt != nullptr && opt->count() > 0) return cli_value;
    return cfg_.value(key, false);
  }

 private:
  json cfg_;
};

steklov::BoundarySamples load_samples(const std::string& path,
                                      std::shared_ptr<const steklov::BoundaryParam> param) {
  if (!std::filesystem::exists(path)) {
    throw std::invalid_argument("data file does not exist: " + path);
  }
  return steklov::samples_from_json(steklov::load_json(path), std::move(param));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steklov spectra and Fourier trace-space tools on planar domains"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; explicit flags win");
  unsigned threads = 0;
  auto* opt_threads = app.add_option("--threads", threads, "cap on worker threads");

  std::string domain_text;
  int k = 1, ell = 0, mm = 1, modes = 8;
  std::vector<std::string> beta_entries;
  std::string out_path, data_path, coeffs_path, function_name = "cos:1", kind = "gagliardo";
  std::size_t truncation = 16;
  double s_order = 0.5, p_exp = 2.0, delta = 0.25;
  int jmin = 10, jmax = 0, hadamard_n = 10000;
  bool zero_flag = false;
  std::size_t acceptance_truncation = 0;

  auto add_domain = [&](CLI::App* cmd) {
    return cmd->add_option("--domain", domain_text,
                           "disk:R[:samples] | rect:LX,LY,NX,NY[,p1|c1] | "
                           "polydisk:R,REF | mesh:PATH");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one member of the Steklov family");
  auto* so_dom = add_domain(solve);
  auto* so_k = solve->add_option("--k", k, "order of the family (1 or 2)");
  auto* so_l = solve->add_option("--l", ell, "selected trace index");
  auto* so_beta = solve->add_option("--beta", beta_entries, "boundary weights as j=value");
  auto* so_modes = solve->add_option("--modes", modes, "angular modes (disk k=1) or eigenvalues");
  auto* so_out = solve->add_option("--out", out_path, "output prefix (.csv/.json/.diag.json)");

  CLI::App* solve_aux = app.add_subcommand("solve-aux", "solve an auxiliary problem");
  auto* sa_dom = add_domain(solve_aux);
  auto* sa_l = solve_aux->add_option("--l", ell, "pinned trace index");
  auto* sa_m = solve_aux->add_option("--m", mm, "weighted trace index");
  auto* sa_modes = solve_aux->add_option("--modes", modes, "eigenvalue count");
  auto* sa_out = solve_aux->add_option("--out", out_path, "output prefix");

  CLI::App* expand = app.add_subcommand("expand", "expand boundary samples in a trace basis");
  auto* ex_dom = add_domain(expand);
  auto* ex_k = expand->add_option("--k", k, "order");
  auto* ex_l = expand->add_option("--l", ell, "trace index");
  auto* ex_modes = expand->add_option("--modes", modes, "basis size to solve");
  auto* ex_data = expand->add_option("--data", data_path, "samples JSON {\"values\": [...]}");
  auto* ex_trunc = expand->add_option("--truncation", truncation, "number of coefficients");
  auto* ex_out = expand->add_option("--out", out_path, "coefficients JSON");

  CLI::App* extend_cmd = app.add_subcommand("extend", "extend trace coefficients into the domain");
  auto* et_dom = add_domain(extend_cmd);
  auto* et_k = extend_cmd->add_option("--k", k, "order");
  auto* et_l = extend_cmd->add_option("--l", ell, "trace index");
  auto* et_modes = extend_cmd->add_option("--modes", modes, "basis size to solve");
  auto* et_coeffs = extend_cmd->add_option("--coeffs", coeffs_path, "coefficients JSON");
  auto* et_out = extend_cmd->add_option("--out", out_path, "extension report JSON");

  CLI::App* check_pair_cmd = app.add_subcommand("check-pair", "total-trace compatibility test");
  auto* cp_dom = add_domain(check_pair_cmd);
  auto* cp_modes = check_pair_cmd->add_option("--modes", modes, "spectra depth");
  auto* cp_trunc = check_pair_cmd->add_option("--truncation", truncation, "expansion depth");
  auto* cp_data = check_pair_cmd->add_option("--data", data_path, "pair JSON {g0, g1}");
  auto* cp_zero = check_pair_cmd->add_flag("--zero", zero_flag, "test the zero pair");
  auto* cp_out = check_pair_cmd->add_option("--out", out_path, "report JSON");

  CLI::App* check_poly = app.add_subcommand("check-polygon", "vertex mismatch integrals (p=2)");
  auto* po_dom = add_domain(check_poly);
  auto* po_data = check_poly->add_option("--data", data_path, "samples JSON");
  auto* po_delta = check_poly->add_option("--delta", delta, "arclength window");
  auto* po_out = check_poly->add_option("--out", out_path, "output prefix (.json/.csv)");

  CLI::App* check_gey = app.add_subcommand("check-geymonat", "rotated-gradient membership test");
  auto* ge_dom = add_domain(check_gey);
  auto* ge_data = check_gey->add_option("--data", data_path, "pair JSON with g0/g1 values");
  auto* ge_out = check_gey->add_option("--out", out_path, "report JSON");

  CLI::App* oracle = app.add_subcommand("oracle", "Gagliardo / Besov seminorm estimates");
  auto* or_dom = add_domain(oracle);
  auto* or_fn = oracle->add_option("--function", function_name, "cos:N | sin:N | step");
  auto* or_data = oracle->add_option("--data", data_path, "samples JSON (overrides --function)");
  auto* or_s = oracle->add_option("--s", s_order, "smoothness order");
  auto* or_p = oracle->add_option("--p", p_exp, "integrability exponent");
  auto* or_kind = oracle->add_option("--kind", kind, "gagliardo | besov1 | besov2");
  auto* or_out = oracle->add_option("--out", out_path, "output prefix (.json/.csv)");

  CLI::App* weyl = app.add_subcommand("weyl", "power-law fit of a computed spectrum");
  auto* wy_dom = add_domain(weyl);
  auto* wy_k = weyl->add_option("--k", k, "order");
  auto* wy_l = weyl->add_option("--l", ell, "trace index");
  auto* wy_modes = weyl->add_option("--modes", modes, "spectrum depth");
  auto* wy_jmin = weyl->add_option("--jmin", jmin, "first index of the fit");
  auto* wy_jmax = weyl->add_option("--jmax", jmax, "last index (0 = all)");
  auto* wy_out = weyl->add_option("--out", out_path, "fit JSON");

  CLI::App* hadamard = app.add_subcommand("hadamard", "the classical counterexample verdicts");
  auto* ha_n = hadamard->add_option("--N", hadamard_n, "number of cosine modes");
  auto* ha_out = hadamard->add_option("--out", out_path, "verdict JSON");

  CLI::App* reproduce = app.add_subcommand("reproduce-all", "run every acceptance criterion");
  auto* ra_trunc = reproduce->add_option("--truncation", acceptance_truncation,
                                         "override classification depth (soft failures)");

  try {
    app.parse(argc, argv);

    json cfg = json::object();
    if (!config_path.empty()) {
      if (!std::filesystem::exists(config_path)) {
        throw std::invalid_argument("config file does not exist: " + config_path);
      }
      cfg = steklov::load_json(config_path);
    }
    const ConfigMerge merge(cfg);
    merge.fill(opt_threads, "threads", threads);
    if (threads > 0) steklov::set_worker_cap(threads);

    auto need_domain = [&](const CLI::Option* opt) {
      merge.fill(opt, "domain", domain_text);
      if (domain_text.empty()) throw std::invalid_argument("--domain is required");
      return parse_domain(domain_text);
    };

    auto write_spectrum_outputs = [&](const steklov::Spectrum& spec) {
      if (out_path.empty()) throw std::invalid_argument("--out is required");
      steklov::write_spectrum_csv(spec, out_path + ".csv");
      steklov::write_json(steklov::spectrum_json(spec), out_path + ".json");
      steklov::write_json(
          steklov::diagnostics_json(spec, std::min<std::size_t>(20, spec.size())),
          out_path + ".diag.json");
      info("wrote %s.{csv,json,diag.json}", out_path.c_str());
    };

    if (*solve) {
      const DomainSpec dom = need_domain(so_dom);
      merge.fill(so_k, "k", k);
      merge.fill(so_l, "l", ell);
      merge.fill(so_modes, "modes", modes);
      merge.fill(so_out, "out", out_path);
      merge.fill(so_beta, "beta", beta_entries);
      const steklov::Spectrum spec =
          solve_problem(dom, k, ell, parse_beta(beta_entries), modes, std::nullopt);
      write_spectrum_outputs(spec);
      return 0;
    }

    if (*solve_aux) {
      const DomainSpec dom = need_domain(sa_dom);
      merge.fill(sa_l, "l", ell);
      merge.fill(sa_m, "m", mm);
      merge.fill(sa_modes, "modes", modes);
      merge.fill(sa_out, "out", out_path);
      const steklov::Spectrum spec =
          solve_problem(dom, 2, ell, {}, modes, std::make_pair(ell, mm));
      write_spectrum_outputs(spec);
      return 0;
    }

    if (*expand) {
      const DomainSpec dom = need_domain(ex_dom);
      merge.fill(ex_k, "k", k);
      merge.fill(ex_l, "l", ell);
      merge.fill(ex_modes, "modes", modes);
      merge.fill(ex_data, "data", data_path);
      merge.fill(ex_trunc, "truncation", truncation);
      merge.fill(ex_out, "out", out_path);
      if (out_path.empty()) throw std::invalid_argument("--out is required");
      auto spec = std::make_shared<steklov::Spectrum>(
          solve_problem(dom, k, ell, {}, modes, std::nullopt));
      const steklov::BoundarySamples g = load_samples(data_path, spec->boundary);
      const steklov::TraceCoefficients c = steklov::boundary_expand(g, spec, truncation);
      steklov::write_json(steklov::coefficients_json(c), out_path);
      return 0;
    }

    if (*extend_cmd) {
      const DomainSpec dom = need_domain(et_dom);
      merge.fill(et_k, "k", k);
      merge.fill(et_l, "l", ell);
      merge.fill(et_modes, "modes", modes);
      merge.fill(et_coeffs, "coeffs", coeffs_path);
      merge.fill(et_out, "out", out_path);
      if (out_path.empty()) throw std::invalid_argument("--out is required");
      if (!std::filesystem::exists(coeffs_path)) {
        throw std::invalid_argument("coefficients file does not exist: " + coeffs_path);
      }
      auto spec = std::make_shared<steklov::Spectrum>(
          solve_problem(dom, k, ell, {}, modes, std::nullopt));
      const steklov::TraceCoefficients c =
          steklov::coefficients_from_json(steklov::load_json(coeffs_path), spec);
      const steklov::Field field = steklov::extend(c);
      json out;
      out["basis"] = spec->basis_id;
      out["coeffs"] = c.coeffs;
      for (int m = 0; m < spec->problem.k; ++m) {
        const Eigen::VectorXd tr = spec->basis->sample_trace(field, m);
        out["traces"]["gamma_" + std::to_string(m)] =
            std::vector<double>(tr.data(), tr.data() + tr.size());
      }
      double hk = 0.0;
      for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
        hk += (1.0 + spec->eigenvalues[j]) * c.coeffs[j] * c.coeffs[j];
      }
      out["hk_norm_sq"] = hk;
      steklov::write_json(out, out_path);
      return 0;
    }

    if (*check_pair_cmd) {
      const DomainSpec dom = need_domain(cp_dom);
      if (dom.kind != DomainSpec::Kind::disk) {
        throw std::invalid_argument("check-pair: only disk domains are supported");
      }
      merge.fill(cp_modes, "modes", modes);
      merge.fill(cp_trunc, "truncation", truncation);
      merge.fill(cp_data, "data", data_path);
      merge.fill(cp_out, "out", out_path);
      const bool zero = merge.flag(cp_zero, "zero", zero_flag);
      steklov::DiskSolveOptions opts;
      opts.n_boundary_samples = dom.disk_samples > 0 ? dom.disk_samples : 1024;
      steklov::SteklovProblemSpec p0;
      p0.k = 2;
      p0.ell = 0;
      p0.domain = steklov::DiskDomain{dom.radius, {0.0, 0.0}};
      steklov::SteklovProblemSpec p1 = p0;
      p1.ell = 1;
      steklov::CompatibilityContext ctx;
      ctx.spec0 = std::make_shared<steklov::Spectrum>(
          steklov::biharmonic_steklov_disk(p0, modes, opts));
      ctx.spec1 = std::make_shared<steklov::Spectrum>(
          steklov::biharmonic_steklov_disk(p1, modes, opts));
      ctx.aux01 = std::make_shared<steklov::Spectrum>(
          steklov::disk_auxiliary_spectrum(dom.radius, 0, 1, modes, opts));
      ctx.aux10 = std::make_shared<steklov::Spectrum>(
          steklov::disk_auxiliary_spectrum(dom.radius, 1, 0, modes, opts));
      steklov::TracePair pair;
      if (zero) {
        pair = steklov::zero_pair(ctx);
      } else {
        if (data_path.empty()) throw std::invalid_argument("check-pair: --data or --zero");
        const json data = steklov::load_json(data_path);
        if (!data.contains("g0") || !data.contains("g1")) {
          throw std::invalid_argument("check-pair: data must carry g0 and g1");
        }
        auto parse_component = [&](const json& node, std::shared_ptr<const steklov::Spectrum> sp)
            -> std::variant<steklov::BoundarySamples, steklov::TraceCoefficients> {
          if (node.contains("values")) {
            return steklov::samples_from_json(node, ctx.spec0->boundary);
          }
          return steklov::coefficients_from_json(node, std::move(sp));
        };
        pair.g0 = parse_component(data["g0"], ctx.spec0);
        pair.g1 = parse_component(data["g1"], ctx.spec1);
      }
      const steklov::CompatibilityReport rep = steklov::check_pair(pair, ctx, truncation);
      const json out = steklov::compatibility_json(rep);
      if (out_path.empty()) {
        std::printf("%s\n", out.dump(2).c_str());
      } else {
        steklov::write_json(out, out_path);
      }
      if (!rep.routes_consistent) {
        throw steklov::InvariantViolation("check-pair: route verdicts contradict");
      }
      return 0;
    }

    if (*check_poly) {
      const DomainSpec dom = need_domain(po_dom);
      merge.fill(po_data, "data", data_path);
      merge.fill(po_delta, "delta", delta);
      merge.fill(po_out, "out", out_path);
      if (!(delta > 0.0)) throw std::invalid_argument("check-polygon: delta must be positive");
      if (out_path.empty()) throw std::invalid_argument("--out is required");
      const steklov::MeshGeometry geom = realize_mesh(dom);
      const steklov::BoundarySamples g = load_samples(data_path, geom.boundary);
      const auto reports = steklov::vertex_compat_p2(steklov::split_sides(g), delta);
      steklov::write_json(steklov::vertex_reports_json(reports), out_path + ".json");
      steklov::write_vertex_reports_csv(reports, out_path + ".csv");
      return 0;
    }

    if (*check_gey) {
      const DomainSpec dom = need_domain(ge_dom);
      merge.fill(ge_data, "data", data_path);
      merge.fill(ge_out, "out", out_path);
      if (out_path.empty()) throw std::invalid_argument("--out is required");
      const steklov::MeshGeometry geom = realize_mesh(dom);
      const json data = steklov::load_json(data_path);
      if (!data.contains("g0") || !data.contains("g1")) {
        throw std::invalid_argument("check-geymonat: data must carry g0 and g1 values");
      }
      const steklov::BoundarySamples g0 =
          steklov::samples_from_json(data["g0"], geom.boundary);
      const steklov::BoundarySamples g1 =
          steklov::samples_from_json(data["g1"], geom.boundary);
      const steklov::GeymonatReport rep = steklov::geymonat_check(g0, g1);
      json out;
      out["compatible"] = rep.compatible;
      out["component_x"] = steklov::seminorm_json(rep.component_x);
      out["component_y"] = steklov::seminorm_json(rep.component_y);
      steklov::write_json(out, out_path);
      return 0;
    }

    if (*oracle) {
      const DomainSpec dom = need_domain(or_dom);
      merge.fill(or_fn, "function", function_name);
      merge.fill(or_data, "data", data_path);
      merge.fill(or_s, "s", s_order);
      merge.fill(or_p, "p", p_exp);
      merge.fill(or_kind, "kind", kind);
      merge.fill(or_out, "out", out_path);
      if (out_path.empty()) throw std::invalid_argument("--out is required");
      std::shared_ptr<const steklov::BoundaryParam> param;
      if (dom.kind == DomainSpec::Kind::disk) {
        param = steklov::build_disk(dom.radius,
                                    dom.disk_samples > 0 ? dom.disk_samples : 1024)
                    .boundary;
      } else {
        param = realize_mesh(dom).boundary;
      }
      steklov::BoundarySamples g;
      if (!data_path.empty()) {
        g = load_samples(data_path, param);
      } else {
        const auto parts = split(function_name, ':');
        Eigen::VectorXd v(param->n_nodes());
        const double length = param->total_length;
        for (std::size_t i = 0; i < param->n_nodes(); ++i) {
          const double t = param->node_arclengths[i];
          if (parts[0] == "cos") {
            v[i] = std::cos(std::stoi(parts.at(1)) * 2.0 * M_PI * t / length);
          } else if (parts[0] == "sin") {
            v[i] = std::sin(std::stoi(parts.at(1)) * 2.0 * M_PI * t / length);
          } else if (parts[0] == "step") {
            v[i] = t < 0.5 * length ? 1.0 : -1.0;
          } else {
            throw std::invalid_argument("oracle: unknown function " + function_name);
          }
        }
        g = steklov::make_samples(param, v);
      }
      steklov::SeminormEstimate est;
      if (kind == "gagliardo") {
        est = steklov::gagliardo_seminorm(g, s_order, p_exp);
      } else if (kind == "besov1") {
        est = steklov::besov_diff_seminorm(g, s_order, p_exp, 1);
      } else if (kind == "besov2") {
        est = steklov::besov_diff_seminorm(g, s_order, p_exp, 2);
      } else {
        throw std::invalid_argument("oracle: kind must be gagliardo, besov1 or besov2");
      }
      steklov::write_json(steklov::seminorm_json(est), out_path + ".json");
      steklov::write_seminorm_csv(est, out_path + ".csv");
      return 0;
    }

    if (*weyl) {
      const DomainSpec dom = need_domain(wy_dom);
      merge.fill(wy_k, "k", k);
      merge.fill(wy_l, "l", ell);
      merge.fill(wy_modes, "modes", modes);
      merge.fill(wy_jmin, "jmin", jmin);
      merge.fill(wy_jmax, "jmax", jmax);
      merge.fill(wy_out, "out", out_path);
      if (out_path.empty()) throw std::invalid_argument("--out is required");
      const steklov::Spectrum spec = solve_problem(dom, k, ell, {}, modes, std::nullopt);
      steklov::write_json(steklov::weyl_json(steklov::weyl_fit(spec, jmin, jmax)), out_path);
      return 0;
    }

    if (*hadamard) {
      merge.fill(ha_n, "N", hadamard_n);
      merge.fill(ha_out, "out", out_path);
      if (hadamard_n < 4) throw std::invalid_argument("hadamard: N must be >= 4");
      const steklov::Spectrum basis = steklov::laplace_steklov_disk(1.0, hadamard_n);
      const std::size_t n_max = basis.size();
      const auto l2 = steklov::classify_membership(
          &steklov::hadamard_coefficient_at, steklov::WeightScheme::HsA(0.0), basis, n_max);
      const auto h12 = steklov::classify_membership(
          &steklov::hadamard_coefficient_at, steklov::WeightScheme::HsA(0.5), basis, n_max);
      json out;
      out["L2"] = steklov::to_string(l2.verdict);
      out["H12A"] = steklov::to_string(h12.verdict);
      out["L2_report"] = steklov::verdict_json(l2);
      out["H12A_report"] = steklov::verdict_json(h12);
      if (out_path.empty()) {
        std::printf("%s\n", out.dump(2).c_str());
      } else {
        steklov::write_json(out, out_path);
      }
      return 0;
    }

    if (*reproduce) {
      merge.fill(ra_trunc, "truncation", acceptance_truncation);
      steklov::AcceptanceOptions opts;
      opts.truncation_override = acceptance_truncation;
      return steklov::report_acceptance(steklov::run_acceptance(opts), stdout);
    }

    throw std::invalid_argument("no subcommand selected");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const steklov::InvariantViolation& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return 3;
  } catch (const steklov::SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
