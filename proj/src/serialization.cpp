#include "steklov/serialization.hpp"

#include <fstream>

#include "steklov/util.hpp"

namespace steklov {

namespace {

int group_of(const Spectrum& s, std::size_t j) {
  for (std::size_t g = 0; g < s.multiplicity_groups.size(); ++g) {
    if (static_cast<int>(j) >= s.multiplicity_groups[g].begin &&
        static_cast<int>(j) < s.multiplicity_groups[g].end) {
      return static_cast<int>(g);
    }
  }
  return -1;
}

}  // namespace

void write_spectrum_csv(const Spectrum& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_spectrum_csv: cannot write " + path);
  out << "j,sigma,multiplicity_group\n";
  for (std::size_t j = 0; j < s.size(); ++j) {
    out << (j + 1) << "," << fmt17(s.eigenvalues[j]) << "," << group_of(s, j) << "\n";
  }
}

nlohmann::json spectrum_json(const Spectrum& s, std::size_t max_traces) {
  nlohmann::json j;
  j["basis_id"] = s.basis_id;
  j["k"] = s.problem.k;
  j["ell"] = s.problem.ell;
  if (s.auxiliary_indices) {
    j["auxiliary"] = {s.auxiliary_indices->first, s.auxiliary_indices->second};
  }
  j["eigenvalues"] = s.eigenvalues;
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : s.multiplicity_groups) groups.push_back({g.begin, g.end});
  j["multiplicity_groups"] = groups;
  if (s.boundary) {
    j["boundary"]["total_length"] = s.boundary->total_length;
    j["boundary"]["arclengths"] = s.boundary->node_arclengths;
    j["boundary"]["weights"] = s.boundary->node_weights;
  }
  const std::size_t n_tr = max_traces == 0 ? s.size() : std::min(max_traces, s.size());
  if (s.basis && n_tr > 0) {
    for (int m = 0; m < s.problem.k; ++m) {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t jj = 0; jj < n_tr; ++jj) {
        const Eigen::VectorXd tr = s.trace(m, jj);
        rows.push_back(std::vector<double>(tr.data(), tr.data() + tr.size()));
      }
      j["boundary_traces"]["gamma_" + std::to_string(m)] = rows;
    }
  }
  return j;
}

nlohmann::json coefficients_json(const TraceCoefficients& c) {
  nlohmann::json j;
  j["basis"] = c.basis ? c.basis->basis_id : "";
  j["coeffs"] = c.coeffs;
  return j;
}

TraceCoefficients coefficients_from_json(const nlohmann::json& j,
                                         std::shared_ptr<const Spectrum> basis) {
  if (!j.contains("coeffs")) {
    throw std::invalid_argument("coefficients_from_json: missing coeffs");
  }
  TraceCoefficients c;
  c.basis = std::move(basis);
  c.coeffs = j["coeffs"].get<std::vector<double>>();
  if (j.contains("basis") && c.basis && !j["basis"].get<std::string>().empty() &&
      j["basis"].get<std::string>() != c.basis->basis_id) {
    throw std::invalid_argument("coefficients_from_json: basis mismatch: file has " +
                                j["basis"].get<std::string>() + ", expected " +
                                c.basis->basis_id);
  }
  c.validate();
  return c;
}

nlohmann::json verdict_json(const MembershipVerdict& v) {
  nlohmann::json j;
  j["verdict"] = to_string(v.verdict);
  nlohmann::json sums = nlohmann::json::array();
  for (const auto& [n, s] : v.partial_sums) sums.push_back({n, s});
  j["partial_sums"] = sums;
  j["fit"]["exponent"] = v.growth_exponent;
  j["fit"]["r_squared"] = v.growth_r2;
  if (v.verdict == MembershipVerdict::State::in) j["extrapolated"] = v.extrapolated;
  return j;
}

nlohmann::json compatibility_json(const CompatibilityReport& rep) {
  nlohmann::json j;
  j["verdict"] = to_string(rep.verdict);
  j["routes_consistent"] = rep.routes_consistent;
  for (const RouteReport* r : {&rep.route_a, &rep.route_b}) {
    nlohmann::json rj;
    rj["route"] = r->route;
    rj["residual_l2"] = r->residual_l2;
    rj["residual_coeffs"] = coefficients_json(r->residual_coeffs);
    rj["membership"] = verdict_json(r->verdict);
    j["route_" + std::to_string(r->route)] = rj;
  }
  return j;
}

nlohmann::json seminorm_json(const SeminormEstimate& est) {
  nlohmann::json j;
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& [cut, v] : est.value_at_levels) levels.push_back({cut, v});
  j["value_at_levels"] = levels;
  j["divergent"] = est.divergent;
  if (!est.divergent) j["extrapolated"] = est.extrapolated;
  j["fit"]["slope"] = est.growth.slope;
  j["fit"]["r_squared"] = est.growth.r_squared;
  j["fit"]["relative_growth"] = est.relative_growth;
  return j;
}

void write_seminorm_csv(const SeminormEstimate& est, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_seminorm_csv: cannot write " + path);
  out << "level,estimate\n";
  for (const auto& [cut, v] : est.value_at_levels) {
    out << fmt17(cut) << "," << fmt17(v) << "\n";
  }
}

nlohmann::json weyl_json(const WeylFit& fit) {
  nlohmann::json j;
  j["exponent"] = fit.exponent;
  j["constant"] = fit.constant;
  j["law_constant"] = fit.law_constant;
  j["fit_range"] = {fit.fit_range.first, fit.fit_range.second};
  j["r_squared"] = fit.r_squared;
  return j;
}

nlohmann::json vertex_reports_json(const std::vector<VertexReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["vertex"] = r.vertex;
    j["arclength"] = r.vertex_arclength;
    nlohmann::json est = nlohmann::json::array();
    for (const auto& [c, v] : r.estimates) est.push_back({c, v});
    j["estimates"] = est;
    j["fit"]["slope"] = r.fit.slope;
    j["fit"]["r_squared"] = r.fit.r_squared;
    switch (r.classification) {
      case VertexReport::Class::finite:
        j["classification"] = "finite";
        break;
      case VertexReport::Class::divergent:
        j["classification"] = "divergent";
        break;
      default:
        j["classification"] = "undecided";
    }
    arr.push_back(j);
  }
  return arr;
}

void write_vertex_reports_csv(const std::vector<VertexReport>& reports,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_vertex_reports_csv: cannot write " + path);
  out << "vertex,sigma_min,estimate\n";
  for (const auto& r : reports) {
    for (const auto& [c, v] : r.estimates) {
      out << r.vertex << "," << fmt17(c) << "," << fmt17(v) << "\n";
    }
  }
}

nlohmann::json diagnostics_json(const Spectrum& s, std::size_t n_checked) {
  const SpectrumDiagnostics d = s.verify(n_checked);
  nlohmann::json j;
  j["hk_gram_deviation"] = d.hk_gram_deviation;
  j["l2_gram_deviation"] = d.l2_gram_deviation;
  j["weak_residual"] = d.weak_residual;
  j["reduced_dimension"] = d.reduced_dimension;
  j["skipped_modes"] = d.skipped_modes;
  j["n_checked"] = std::min(n_checked, s.size());
  return j;
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_json: cannot write " + path);
  out << j.dump(2) << "\n";
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_json: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("load_json: parse error in " + path + ": " + e.what());
  }
  return j;
}

BoundarySamples samples_from_json(const nlohmann::json& j,
                                  std::shared_ptr<const BoundaryParam> param) {
  if (!j.contains("values")) throw std::invalid_argument("samples_from_json: missing values");
  const std::vector<double> vals = j["values"].get<std::vector<double>>();
  Eigen::VectorXd v =
      Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  return make_samples(std::move(param), std::move(v));
}

}  // namespace steklov
