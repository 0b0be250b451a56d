#include "dplab/stability.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dplab/errors.hpp"
#include "dplab/functionals.hpp"
#include "dplab/helmholtz.hpp"
#include "dplab/spectrum.hpp"

namespace dplab {

double bilinear_form(const LineField& u, const LineField& v, const SolitonProfile& profile) {
  if (!(u.grid == v.grid)) throw ValidationError("grid mismatch between fields");
  return line_inner(apply_Lc(u, profile), v);
}

double quadratic_form(const LineField& v, const SolitonProfile& profile) {
  return bilinear_form(v, v, profile);
}

K0Evidence k0_evidence(const SolitonProfile& profile, const SpeedDerivative& dphi, double tol) {
  const auto field = LineField::make(profile.grid, dphi.values);
  const auto image = apply_Lc(field, profile);

  K0Evidence out;
  out.quad_form = line_inner(image, field);
  out.minus_dSdc = -dSdc_closed_form(profile.params.c(), profile.params.k());
  out.defect = std::abs(out.quad_form - out.minus_dSdc) / std::abs(out.minus_dSdc);

  const auto slope = profile.derivative_field();
  const auto flow = apply_J_line(image);
  std::vector<double> r(slope.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = flow.samples[i] + slope.samples[i];
  out.gkernel_residual =
      line_norm(LineField::make(profile.grid, std::move(r), 1.0)) / line_norm(slope);

  if (!(out.defect <= tol)) {
    std::ostringstream msg;
    msg << "index identity defect " << out.defect << " exceeds " << tol;
    throw NumericalError(msg.str());
  }
  return out;
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::SpectrallyStable ? "SpectrallyStable" : "Inconclusive";
}

IndexReport index_report(const SolitonProfile& profile, const IndexOptions& options) {
  const WaveParams& params = profile.params;
  IndexReport report;
  report.c = params.c();
  report.k = params.k();
  report.dSdc = dSdc_closed_form(params.c(), params.k());
  report.minus_dSdc = -report.dSdc;

  auto fail = [&](std::string clause) {
    report.verdict = Verdict::Inconclusive;
    report.failing_clause = std::move(clause);
    return report;
  };

  report.traveling_residual = traveling_residual(profile) / line_norm(profile.field());
  if (!(report.traveling_residual <= options.tol_residual)) {
    std::ostringstream msg;
    msg << "traveling residual " << report.traveling_residual << " exceeds "
        << options.tol_residual << ": input is not a traveling wave";
    return fail(msg.str());
  }

  SpectrumOptions spectrum_options;
  spectrum_options.eig_tol = options.tol_eig;
  const auto spectrum = compute_spectrum(profile, spectrum_options);
  report.n_minus = spectrum.negative_count;
  report.lambda_star = spectrum.lambda_star;

  if (options.matrix_check) {
    const auto periodic = periodize(params, periodic_grid_for(params, options.matrix_spacing));
    const auto matrix = discretize_and_diagonalize_Lc(periodic);
    report.n_minus_matrix = matrix.negative_count;
    report.lambda_star_matrix = matrix.lambda_min;
  }

  const auto dphi = dphi_dc(params, profile.grid, options.delta_c, options.richardson);
  const auto evidence = k0_evidence(profile, dphi, std::numeric_limits<double>::infinity());
  report.quad_form = evidence.quad_form;
  report.defect = evidence.defect;
  report.gkernel_residual = evidence.gkernel_residual;
  report.k0_lower_bound = evidence.quad_form < 0.0 ? 1 : 0;

  if (report.n_minus != 1) {
    return fail("n_minus = " + std::to_string(report.n_minus) + " from shooting, expected 1");
  }
  if (report.n_minus_matrix && *report.n_minus_matrix != 1) {
    return fail("n_minus = " + std::to_string(*report.n_minus_matrix) +
                " from matrix diagonalization, expected 1");
  }
  if (!(report.quad_form < 0.0)) return fail("quadratic form on d_c phi is not negative");
  if (!(report.defect <= options.tol_identity)) {
    std::ostringstream msg;
    msg << "index identity defect " << report.defect << " exceeds " << options.tol_identity;
    return fail(msg.str());
  }
  report.verdict = Verdict::SpectrallyStable;
  return report;
}

IndexReport stability_verdict(const WaveParams& params, const IndexOptions& options) {
  return index_report(compute_profile(params, options.tol_profile), options);
}

}  // namespace dplab
