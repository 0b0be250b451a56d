#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dplab/fields.hpp"
#include "dplab/params.hpp"
#include "dplab/profile.hpp"

namespace dplab {

/// <L_c u, v> by line quadrature.
double bilinear_form(const LineField& u, const LineField& v, const SolitonProfile& profile);
double quadratic_form(const LineField& v, const SolitonProfile& profile);

/// Both sides of <L_c d_c phi, d_c phi> = -dS/dc and the generalized-kernel
/// relation J L_c d_c phi = -d_xi phi.
struct K0Evidence {
  double quad_form = 0.0;
  double minus_dSdc = 0.0;
  double defect = 0.0;             // |quad_form - minus_dSdc| / |minus_dSdc|
  double gkernel_residual = 0.0;   // ||J L_c d_c phi + d_xi phi|| / ||d_xi phi||
};

/// Throws NumericalError when the defect exceeds `tol`.
K0Evidence k0_evidence(const SolitonProfile& profile, const SpeedDerivative& dphi,
                       double tol = 1e-3);

enum class Verdict { SpectrallyStable, Inconclusive };

std::string_view to_string(Verdict verdict);

struct IndexReport {
  double c = 0.0;
  double k = 0.0;
  int n_minus = 0;
  std::optional<int> n_minus_matrix;
  double lambda_star = 0.0;
  std::optional<double> lambda_star_matrix;
  double quad_form = 0.0;
  double dSdc = 0.0;
  double minus_dSdc = 0.0;
  double defect = 0.0;
  double gkernel_residual = 0.0;
  int k0_lower_bound = 0;
  double traveling_residual = 0.0;  // relative to ||phi||
  Verdict verdict = Verdict::Inconclusive;
  std::string failing_clause;       // empty when stable
};

struct IndexOptions {
  double tol_identity = 1e-3;
  double tol_eig = 1e-6;
  double tol_profile = 1e-8;
  double tol_residual = 1e-7;  // traveling residual relative to ||phi||
  double delta_c = 0.0;        // 0 selects the profile default
  bool richardson = false;
  bool matrix_check = true;
  double matrix_spacing = 0.08;
};

/// Verdict for a supplied profile. A profile that is not a traveling wave
/// yields Inconclusive without running the spectral stage.
IndexReport index_report(const SolitonProfile& profile, const IndexOptions& options = {});

/// Builds the profile on its default grid, then calls index_report.
IndexReport stability_verdict(const WaveParams& params, const IndexOptions& options = {});

}  // namespace dplab
