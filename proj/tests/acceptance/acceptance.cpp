// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "baseline_checks.hpp"
#include "dplab/errors.hpp"
#include "dplab/evolution.hpp"
#include "dplab/functionals.hpp"
#include "dplab/profile.hpp"
#include "dplab/spectrum.hpp"
#include "dplab/stability.hpp"
#include "quantities.hpp"

using namespace dplab;

namespace {

const std::vector<double> sweep_c{0.6, 1.0, 2.0, 5.0};
const std::vector<double> sweep_k{0.05, 0.1, 0.25};

// Collects sub-checks; the criterion passes only if all of them hold.
class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) failed_.push_back(what);
    notes_.push_back((ok ? "" : "!") + what);
  }
  bool ok() const { return failed_.empty(); }
  std::string summary() const {
    std::string out;
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    return out;
  }

 private:
  std::vector<std::string> notes_;
  std::vector<std::string> failed_;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

void closed_form_S(Criterion& r) {
  const double S = S_closed_form(1.0, 0.25);
  r.check(std::abs(S - 0.0628653) <= 1e-6, fmt("S=%.9f vs 0.0628653 (diff %.2e)", S, S - 0.0628653));
  const auto profile = compute_profile(WaveParams::make(1.0, 0.25));
  const double reduced = S_quadrature_reduced(profile);
  const double green = functional_S(profile.field());
  const double worst = std::max({rel(S, reduced), rel(S, green), rel(reduced, green)});
  r.check(worst <= 1e-6, fmt("routes agree to %.1e relative", worst));
}

void closed_form_dSdc(Criterion& r) {
  const double d = dSdc_closed_form(1.0, 0.25);
  r.check(std::abs(d - 0.216483) <= 1e-6, fmt("dS/dc=%.9f vs 0.216483 (diff %.2e)", d, d - 0.216483));
  const double h = 1e-4;
  const double fd = (S_closed_form(1.0 + h, 0.25) - S_closed_form(1.0 - h, 0.25)) / (2.0 * h);
  r.check(std::abs(fd - d) <= 1e-7, fmt("finite difference off by %.1e", std::abs(fd - d)));
  double smallest = INFINITY;
  for (double c : sweep_c) {
    for (double k : sweep_k) smallest = std::min(smallest, dSdc_closed_form(c, k));
  }
  r.check(smallest > 0.0, fmt("min dS/dc on sweep %.3e", smallest));
}

void profile_fidelity(Criterion& r) {
  double residual = 0.0, first = 0.0, crest = 0.0, even = 0.0, seconds = 0.0;
  for (double c : sweep_c) {
    for (double k : sweep_k) {
      const auto start = std::chrono::steady_clock::now();
      const auto params = WaveParams::make(c, k);
      const auto p = compute_profile(params);
      residual = std::max(residual, traveling_residual(p) / line_norm(p.field()));
      first = std::max(first, p.first_integral_residual);
      crest = std::max(crest, std::abs(p.values[p.grid.center()] - params.phi_minus()));
      even = std::max(even, p.evenness_defect);
      seconds = std::max(seconds, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
  }
  r.check(residual < 1e-7, fmt("traveling residual %.1e |phi|", residual));
  r.check(first < 1e-8, fmt("first integral %.1e", first));
  r.check(crest <= 1e-10, fmt("crest vs root %.1e", crest));
  r.check(even < 1e-10, fmt("evenness %.1e", even));
  r.check(seconds < 5.0, fmt("slowest point %.2f s", seconds));
}

void spectrum(Criterion& r) {
  const auto params = WaveParams::make(1.0, 0.25);
  const auto profile = compute_profile(params);
  const auto report = compute_spectrum(profile);
  const double theta = report.theta_zero_at_origin + std::numbers::pi / 2.0;
  r.check(std::abs(theta) <= 1e-6, fmt("theta(0,0)+pi/2 = %.1e", theta));
  r.check(report.negative_count == 1 && report.lambda_star > params.lambda_sign_change() &&
              report.lambda_star < 0.0,
          fmt("%.0f negative eigenvalue, lambda*=%.9f", report.negative_count, report.lambda_star));
  const auto matrix = discretize_and_diagonalize_Lc(periodize(params, periodic_grid_for(params, 0.08)));
  r.check(std::abs(report.lambda_star - matrix.lambda_min) <= 1e-5,
          fmt("|shoot - matrix| = %.1e", std::abs(report.lambda_star - matrix.lambda_min)));
  r.check(matrix.negative_count == 1, fmt("matrix negative count %.0f", matrix.negative_count));
  const double edge = std::abs(matrix.edge_estimate - 0.125) / 0.125;
  r.check(edge <= 0.02, fmt("band edge %.6f (%.2f%% off)", matrix.edge_estimate, 100.0 * edge));
}

void qe_negativity(Criterion& r) {
  const auto q = qe_negativity_check(compute_profile(WaveParams::make(1.0, 0.25)));
  r.check(q.negative_on_positive_axis, fmt("max q_e for xi>h %.3e", q.max_on_positive_axis));
  r.check(q.oddness_defect <= 1e-8, fmt("oddness %.1e", q.oddness_defect));
}

void index_identity(Criterion& r) {
  const auto params = WaveParams::make(1.0, 0.25);
  const auto profile = compute_profile(params);
  const auto plain = k0_evidence(profile, dphi_dc(params, profile.grid));
  r.check(plain.defect <= 1e-3, fmt("defect %.1e at default step", plain.defect));
  const auto extrap = k0_evidence(profile, dphi_dc(params, profile.grid, 0.0, true));
  r.check(extrap.defect < plain.defect, fmt("Richardson at default step %.1e", extrap.defect));
  const double coarse = 0.05;
  const auto coarse_plain = k0_evidence(profile, dphi_dc(params, profile.grid, coarse, false, 1.0), 1.0);
  const auto coarse_extrap = k0_evidence(profile, dphi_dc(params, profile.grid, coarse, true, 1.0), 1.0);
  r.check(coarse_extrap.defect < coarse_plain.defect,
          fmt("at dc=0.05 Richardson %.1e < plain %.1e", coarse_extrap.defect, coarse_plain.defect));
  int stable = 0;
  for (double c : sweep_c) {
    for (double k : sweep_k) stable += stability_verdict(WaveParams::make(c, k)).verdict == Verdict::SpectrallyStable;
  }
  r.check(stable == 12, fmt("%.0f of 12 sweep points SpectrallyStable", stable));
}

void dynamics(Criterion& r) {
  const auto params = WaveParams::make(1.0, 0.25);
  const double period = periodic_grid_for(params, 1.0).period();
  const auto profile = periodize(params, PeriodicGrid(period, 512));

  EvolutionConfig config;
  config.dt = 0.01;
  config.T = std::ceil(5.0 * period / params.c() / config.dt) * config.dt;
  config.series_stride = 1000;
  const auto run = evolve(profile.field(), params.k(), config);
  const double distance = orbit_distance(run.final_state, profile.field()).distance;
  r.check(!run.halted && distance < 1e-4, fmt("orbit distance %.1e after T=%.1f", distance, run.t_final));
  const double drift = std::max({run.max_drift.M, run.max_drift.H, run.max_drift.S});
  r.check(drift < 1e-8, fmt("max relative drift %.1e", drift));

  const auto dc = periodic_dphi_dc(params, profile.grid);
  double worst = -INFINITY;
  std::uint64_t worst_seed = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto probe = linearized_growth_probe(profile, dc, seed, 0.02, 200.0);
    if (probe.fit.sigma > worst) {
      worst = probe.fit.sigma;
      worst_seed = seed;
    }
  }
  r.check(worst < 1e-3, fmt("largest growth fit sigma=%.2e (seed %.0f of 1..8)", worst,
                            static_cast<double>(worst_seed)));

  const auto jlc = jlc_matrix_spectrum(profile);
  const double ratio = jlc.max_real_part / jlc.spectral_radius;
  r.check(ratio < 1e-6, fmt("JL_c max Re / radius %.1e", ratio));
}

void oracle_hygiene(Criterion& r, const std::string& baseline_path) {
  int bad = 0;
  const auto checks = baseline::oracle_checks(1.0, 0.25);
  for (const auto& c : checks) bad += !c.ok();
  r.check(bad == 0, fmt("%.0f of %.0f oracle checks failed", bad, static_cast<double>(checks.size())));
  const auto stored = cli::read_baseline(baseline_path);
  int mismatched = 0;
  for (const auto& line : cli::compare(stored, cli::baseline_quantities(stored.c, stored.k, {}))) {
    mismatched += !line.ok;
  }
  r.check(mismatched == 0, fmt("verify: %.0f of %.0f entries differ", mismatched,
                               static_cast<double>(stored.entries.size())));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <baseline.json>\n";
    return 2;
  }
  const std::string baseline_path = argv[1];
  struct Item {
    int id;
    const char* title;
    double budget_s;
    std::function<void(Criterion&)> body;
  };
  const std::vector<Item> items{
      {1, "closed-form S", 1.0, closed_form_S},
      {2, "closed-form dS/dc", 1.0, closed_form_dSdc},
      {3, "profile fidelity", 5.0 * 12, profile_fidelity},
      {4, "spectrum of L_c", 60.0, spectrum},
      {5, "q_e negativity", 1.0, qe_negativity},
      {6, "index identity and sweep", 120.0, index_identity},
      {7, "dynamics", 300.0, dynamics},
      {8, "oracle hygiene", 600.0, [&](Criterion& r) { oracle_hygiene(r, baseline_path); }},
  };
  int failures = 0;
  for (const auto& item : items) {
    Criterion r;
    const auto start = std::chrono::steady_clock::now();
    try {
      item.body(r);
    } catch (const std::exception& ex) {
      r.check(false, std::string("exception: ") + ex.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.check(seconds < item.budget_s, fmt("%.2f s of %.0f s", seconds, item.budget_s));
    failures += !r.ok();
    std::cout << (r.ok() ? "PASS " : "FAIL ") << item.id << ' ' << item.title << ": " << r.summary()
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
