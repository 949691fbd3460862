#pragma once

#include <string>

#include "json.hpp"
#include "steklov/asymptotics.hpp"
#include "steklov/besov_oracle.hpp"
#include "steklov/compatibility.hpp"
#include "steklov/fem.hpp"

namespace steklov {

/// CSV with columns (j, sigma, multiplicity_group); 17 significant digits.
void write_spectrum_csv(const Spectrum& s, const std::string& path);

/// JSON companion carrying the sampled boundary traces of the first
/// max_traces eigenfunctions (all of them when max_traces = 0).
nlohmann::json spectrum_json(const Spectrum& s, std::size_t max_traces = 64);

nlohmann::json coefficients_json(const TraceCoefficients& c);
TraceCoefficients coefficients_from_json(const nlohmann::json& j,
                                         std::shared_ptr<const Spectrum> basis);

nlohmann::json verdict_json(const MembershipVerdict& v);
nlohmann::json compatibility_json(const CompatibilityReport& rep);
nlohmann::json seminorm_json(const SeminormEstimate& est);
void write_seminorm_csv(const SeminormEstimate& est, const std::string& path);
nlohmann::json weyl_json(const WeylFit& fit);
nlohmann::json vertex_reports_json(const std::vector<VertexReport>& reports);
void write_vertex_reports_csv(const std::vector<VertexReport>& reports,
                              const std::string& path);
nlohmann::json diagnostics_json(const Spectrum& s, std::size_t n_checked);

void write_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

/// Boundary samples file: {"values": [...]} matching the domain's node count.
BoundarySamples samples_from_json(const nlohmann::json& j,
                                  std::shared_ptr<const BoundaryParam> param);

}  // namespace steklov
