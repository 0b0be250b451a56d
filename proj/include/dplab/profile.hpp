#pragma once

#include <span>
#include <vector>

#include "dplab/fields.hpp"
#include "dplab/grid.hpp"
#include "dplab/params.hpp"

namespace dplab {

/// Even, single-humped solitary wave phi(xi; c) sampled on a symmetric grid.
///
/// The profile is built from the zero level set of the first integral. Near
/// the crest the substitution phi = phi_max - t^2 turns the square-root
/// turning point into a regular ODE for t(xi); once phi falls below half the
/// crest the integration continues in log(phi), which keeps full relative
/// accuracy down the exponential tail. Samples for xi < 0 are mirror copies
/// of xi > 0, so evenness holds bit for bit.
struct SolitonProfile {
  WaveParams params;
  SymmetricGrid grid;
  std::vector<double> values;
  std::vector<double> derivative;
  double phi_max = 0.0;
  double tail_rate = 0.0;

  // Diagnostics filled in by compute_profile.
  double first_integral_residual = 0.0;  // max |Phi(phi, phi_xi)| / phi_max^2 P(0)
  double evenness_defect = 0.0;
  double tail_value = 0.0;               // max(phi(-L), phi(L))

  LineField field() const;
  LineField derivative_field() const;
};

/// Throws ValidationError when the grid is too short for the tail to fall
/// below `tol`, NumericalError when the first-integral residual exceeds it.
SolitonProfile compute_profile(const WaveParams& params, const SymmetricGrid& grid,
                               double tol = 1e-8);

/// Default grid from SymmetricGrid::for_params.
SolitonProfile compute_profile(const WaveParams& params, double tol = 1e-8);

struct ProfileSamples {
  std::vector<double> values;
  std::vector<double> slopes;  // |phi_xi|
};

/// phi and |phi_xi| at the given abscissae, which must be nonnegative and
/// ascending.
ProfileSamples profile_at(const WaveParams& params, std::span<const double> abscissae);

/// Local 8-point Lagrange interpolation of a computed profile. Beyond the
/// grid the tail is continued as phi(L) exp(-nu (|xi| - L)).
class ProfileInterpolant {
 public:
  explicit ProfileInterpolant(const SolitonProfile& profile);

  double operator()(double xi) const;

 private:
  std::vector<double> half_;  // phi at xi = 0, h, 2h, ..., L
  double spacing_;
  double half_width_;
  double tail_rate_;
  std::vector<double> barycentric_;
};

/// Soliton sampled on a circle of length P >= 2L; the seam value phi(P/2)
/// is reported as the wrapped tail.
struct PeriodicProfile {
  WaveParams params;
  PeriodicGrid grid;
  std::vector<double> values;
  std::vector<double> derivative;
  double wrapped_tail = 0.0;

  PeriodicField field() const;
  PeriodicField derivative_field() const;
};

PeriodicProfile periodize(const WaveParams& params, const PeriodicGrid& grid,
                          double tail_tol = 1e-10);

/// Smallest power-of-two grid with period >= 2 L(params) whose spacing does
/// not exceed `max_spacing`.
PeriodicGrid periodic_grid_for(const WaveParams& params, double max_spacing,
                               double tail_tol = 1e-12);

/// Central difference (phi(c + dc) - phi(c - dc)) / (2 dc) on a fixed grid.
struct SpeedDerivative {
  std::vector<double> values;
  double delta_c = 0.0;
  bool richardson = false;
  double truncation_estimate = 0.0;  // sup-norm error estimate of the plain difference
  double roundoff_estimate = 0.0;
  double scale = 0.0;                // sup-norm of the derivative
};

/// delta_c <= 0 selects the default 1e-4 c. The step is checked against a
/// half step: a truncation estimate above `check_tol * scale` means the step
/// is too large, a roundoff estimate above it means the step is too small.
/// Either throws NumericalError. With `richardson` the returned field is the
/// extrapolation (4 D(dc/2) - D(dc)) / 3.
SpeedDerivative dphi_dc(const WaveParams& params, const SymmetricGrid& grid, double delta_c = 0.0,
                        bool richardson = false, double check_tol = 1e-5);

/// sup_{|xi| <= W} |phi(xi; c, k) - c exp(-|xi|)| for each k.
std::vector<double> peakon_limit_deviation(double c, std::span<const double> k_sequence,
                                           double compact_half_width);

/// phi''(0) from the profile system evaluated at psi = 0.
double crest_curvature(const WaveParams& params);

}  // namespace dplab
