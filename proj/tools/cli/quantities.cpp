#include "quantities.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "dplab/errors.hpp"
#include "dplab/functionals.hpp"
#include "dplab/helmholtz.hpp"
#include "dplab/profile.hpp"
#include "dplab/spectrum.hpp"
#include "dplab/stability.hpp"

namespace dplab::cli {

std::vector<Quantity> baseline_quantities(double c, double k, const Tolerances& tol) {
  const auto params = WaveParams::make(c, k);
  const auto profile = compute_profile(params, tol.profile);
  const auto conserved_line = conserved(profile.field(), k);

  SpectrumOptions spectrum_options;
  spectrum_options.eig_tol = tol.eig;
  spectrum_options.ode_tol = tol.ode;
  spectrum_options.bisection_tol = tol.bisection;
  const auto spectrum = compute_spectrum(profile, spectrum_options);
  const auto qe = qe_negativity_check(profile);

  const auto dphi = dphi_dc(params, profile.grid);
  const auto evidence = k0_evidence(profile, dphi, tol.identity);

  const auto periodic = periodize(params, periodic_grid_for(params, 0.08));
  const auto matrix = discretize_and_diagonalize_Lc(periodic);

  std::vector<Quantity> out{
      {"phi_max", profile.values[profile.grid.center()]},
      {"S_closed", S_closed_form(c, k)},
      {"S_line", conserved_line.S},
      {"M_line", conserved_line.M},
      {"H_line", conserved_line.H},
      {"dSdc_closed", dSdc_closed_form(c, k)},
      {"theta_zero_origin", spectrum.theta_zero_at_origin},
      {"lambda_star", spectrum.lambda_star},
      {"qe_at_1", std::numeric_limits<double>::quiet_NaN()},
      {"quad_form_dphi_dc", evidence.quad_form},
      {"edge_estimate", matrix.edge_estimate},
  };
  // q_e at the grid point nearest xi = 1.
  const std::size_t i1 =
      profile.grid.center() +
      static_cast<std::size_t>(std::llround(1.0 / profile.grid.spacing()));
  out[8] = {"qe_at_1", qe.qe.samples[i1]};
  for (std::size_t j = 2; j < spectrum.eigenvalues.size(); ++j) {
    out.push_back({"lambda_bound_" + std::to_string(j - 1), spectrum.eigenvalues[j].lambda});
  }
  return out;
}

Baseline read_baseline(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read baseline '" + path + "'");
  try {
    const auto doc = nlohmann::json::parse(in);
    Baseline out;
    out.c = doc.at("c").get<double>();
    out.k = doc.at("k").get<double>();
    for (const auto& e : doc.at("entries")) {
      out.entries.push_back(
          {e.at("name").get<std::string>(), e.at("value").get<double>(), e.at("tol").get<double>()});
    }
    if (out.entries.empty()) throw ValidationError("baseline '" + path + "' has no entries");
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError("malformed baseline '" + path + "': " + ex.what());
  }
}

void write_baseline(const Baseline& baseline, const std::string& path) {
  nlohmann::ordered_json doc;
  doc["c"] = baseline.c;
  doc["k"] = baseline.k;
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : baseline.entries) {
    doc["entries"].push_back({{"name", e.name}, {"value", e.value}, {"tol", e.tol}});
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write baseline '" + path + "'");
  out << doc.dump(2) << '\n';
}

std::vector<VerifyLine> compare(const Baseline& baseline, const std::vector<Quantity>& actual) {
  std::vector<VerifyLine> lines;
  for (const auto& entry : baseline.entries) {
    VerifyLine line{entry.name, entry.value, std::numeric_limits<double>::quiet_NaN(), entry.tol,
                    false};
    for (const auto& q : actual) {
      if (q.name == entry.name) line.actual = q.value;
    }
    line.ok = std::abs(line.actual - line.expected) <= line.tol;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace dplab::cli
