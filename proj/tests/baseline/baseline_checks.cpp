#include "baseline_checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dplab/params.hpp"
#include "dplab/profile.hpp"
#include "oracles.hpp"

namespace baseline {

bool OracleCheck::ok() const { return std::abs(library - reference) <= tol; }

double regression_tol(double value) { return 1e-9 * std::max(1.0, std::abs(value)); }

std::vector<OracleCheck> oracle_checks(double c, double k) {
  const auto quantities = dplab::cli::baseline_quantities(c, k, {});
  auto value = [&](const std::string& name) {
    for (const auto& q : quantities) {
      if (q.name == name) return q.value;
    }
    throw std::runtime_error("missing quantity " + name);
  };

  const auto params = dplab::WaveParams::make(c, k);
  const double S_ref = oracle::S_orbit_quadrature(c, k);
  const double dSdc_ref =
      oracle::derivative([&](double s) { return oracle::S_orbit_quadrature(s, k); }, c, 1e-3 * c);

  // Matrix oracle on a circle long enough for the tails to vanish. The
  // highest bound state sits close to the band and decays slowly, hence the
  // margin over the line domain.
  const double period = 3.0 * dplab::SymmetricGrid::for_params(params).half_width();
  const std::size_t n = 1536;
  const auto eig = oracle::lc_eigenvalues(c, k, period, n);

  // q_e = (4 - d^2)^{-1} phi_xi at xi = 1 by Numerov on the RK4 orbit slope.
  const auto grid = dplab::SymmetricGrid::for_params(params);
  const std::size_t sub = 4;
  const auto orbit = oracle::integrate_orbit(c, k, grid.spacing() / sub, grid.half_width());
  std::vector<double> slope(grid.size());
  const std::size_t mid = grid.center();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool right = i >= mid;
    const std::size_t offset = right ? i - mid : mid - i;
    slope[i] = (right ? 1.0 : -1.0) * orbit.psi[offset * sub];
  }
  const auto qe = oracle::numerov_helmholtz4(slope, grid.half_width());
  const std::size_t i1 = mid + static_cast<std::size_t>(std::llround(1.0 / grid.spacing()));

  std::vector<OracleCheck> out{
      {"phi_max", "bracketed root of the quadratic", value("phi_max"), oracle::wave_height(c, k),
       1e-10},
      {"S_closed", "orbit quadrature", value("S_closed"), S_ref, 1e-9},
      {"S_line", "orbit quadrature", value("S_line"), S_ref, 1e-8},
      {"M_line", "orbit quadrature", value("M_line"),
       2.0 * oracle::orbit_integral(c, k, [](double phi) { return phi; }), 1e-8},
      {"H_line", "explicit DFT kernel on the circle", value("H_line"),
       oracle::H_circle(c, k, period, n), 1e-8},
      {"dSdc_closed", "extrapolated difference of orbit quadrature", value("dSdc_closed"),
       dSdc_ref, 1e-7},
      {"theta_zero_origin", "angle -pi/2", value("theta_zero_origin"), -std::acos(-1.0) / 2.0,
       1e-6},
      {"lambda_star", "explicit DFT matrix diagonalization", value("lambda_star"), eig[0], 1e-5},
      {"qe_at_1", "Numerov solve on the RK4 orbit", value("qe_at_1"), qe[i1], 1e-6},
      {"quad_form_dphi_dc", "minus extrapolated dS/dc", value("quad_form_dphi_dc"), -dSdc_ref,
       1e-3 * dSdc_ref},
      {"edge_estimate", "far-field symbol (c - 2k)/4", value("edge_estimate"), params.essential_edge(),
       0.02 * params.essential_edge()},
  };
  // Positive bound states follow the kernel pair in the matrix spectrum.
  for (std::size_t j = 1;; ++j) {
    const std::string name = "lambda_bound_" + std::to_string(j);
    const auto it = std::find_if(quantities.begin(), quantities.end(),
                                 [&](const auto& q) { return q.name == name; });
    if (it == quantities.end()) break;
    const std::size_t index = 1 + j;  // after lambda* and the translation mode
    out.push_back({name, "explicit DFT matrix diagonalization", it->value, eig.at(index), 1e-5});
  }
  return out;
}

dplab::cli::Baseline freeze(double c, double k, const std::vector<OracleCheck>& checks) {
  dplab::cli::Baseline out;
  out.c = c;
  out.k = k;
  for (const auto& check : checks) {
    if (!check.ok()) throw std::runtime_error("oracle disagrees on " + check.name);
    out.entries.push_back({check.name, check.library, regression_tol(check.library)});
  }
  return out;
}

}  // namespace baseline
