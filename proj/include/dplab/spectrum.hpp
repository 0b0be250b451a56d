#pragma once

#include <optional>
#include <vector>

#include "dplab/fields.hpp"
#include "dplab/params.hpp"
#include "dplab/profile.hpp"

namespace dplab {

/// A(xi, lambda) = (c - 2k - 4 phi - 4 lambda) / (c - phi - lambda), the
/// coefficient of the reduced eigenproblem p'' = A p with p = (4 - d^2)^{-1} v.
class ReducedCoefficient {
 public:
  explicit ReducedCoefficient(const SolitonProfile& profile);

  /// Throws ValidationError unless lambda < c - phi_max.
  double operator()(double xi, double lambda) const;
  double at_value(double phi, double lambda) const;

  /// A(+-inf, lambda) = (c - 2k - 4 lambda) / (c - lambda).
  double far_field(double lambda) const;
  /// d A / d lambda = -(3c + 2k) / (c - phi - lambda)^2.
  double lambda_derivative(double xi, double lambda) const;
  /// Unique xi >= 0 where A changes sign; present only for lambda in [lambda_1, 0].
  std::optional<double> turning_point(double lambda) const;

  const WaveParams& params() const { return params_; }
  double phi(double xi) const { return phi_(xi); }

 private:
  void check(double lambda) const;

  WaveParams params_;
  ProfileInterpolant phi_;
};

double coefficient_A(double xi, double lambda, const SolitonProfile& profile);

/// [lo, hi): the range of the far-field symbol c - (3c+2k)/(4 + w^2) joined
/// with the range [c - phi_max, c] of the multiplier.
struct SpectralInterval {
  double lo;
  double hi;
};

SpectralInterval essential_spectrum(const WaveParams& params);

/// One integration of theta' = A cos^2 theta - sin^2 theta (and the slaved
/// log rho' = (1 + A) sin theta cos theta) from xi = -L to 0, sampled on the
/// nonpositive half of the profile grid. The angle is unwrapped.
struct PruferTrace {
  double lambda = 0.0;
  double start_angle = 0.0;  // arctan sqrt(A(-L, lambda))
  std::vector<double> xi;
  std::vector<double> theta;
  std::vector<double> log_rho;
  double theta_at_zero = 0.0;
};

/// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) with relative
/// tolerance `ode_tol`. Requires lambda < min((c-2k)/4, c - phi_max).
PruferTrace prufer_shoot(double lambda, const SolitonProfile& profile, double ode_tol = 1e-10);
PruferTrace prufer_shoot(double lambda, const ReducedCoefficient& coefficient,
                         const SymmetricGrid& grid, double ode_tol = 1e-10);

struct BracketRecord {
  double lambda;
  double theta_at_zero;
};

struct NegativeEigenvalue {
  double lambda_star = 0.0;
  double lower = 0.0;  // final bracket, g(lower) > 0 > g(upper)
  double upper = 0.0;
  std::vector<BracketRecord> history;
};

/// Bisection on g(lambda) = theta^u(0, lambda) over (lambda_1, 0). If g does
/// not change sign there the left end is pushed below lambda_1. Throws
/// NumericalError on bracket failure.
NegativeEigenvalue find_negative_eigenvalue(const SolitonProfile& profile, double tol = 1e-12,
                                            double ode_tol = 1e-10);

struct Eigenfunction {
  double lambda = 0.0;
  LineField p;   // (4 - d^2)^{-1} v
  LineField v;   // normalized in L2; the tail beyond the grid is continued exponentially
  bool even = true;
  int zero_count = 0;     // sign changes of p on the grid
  double residual = 0.0;  // || L_c v - lambda v ||
};

/// Rebuilds p = rho cos(theta) on xi <= 0 from the shooting trace, extends it
/// to xi > 0 by the parity read off theta(0), and forms v = (4 - A) p.
/// Throws NumericalError when the residual exceeds `tol` (a spurious root).
Eigenfunction eigenfunction_reconstruct(double lambda, const SolitonProfile& profile,
                                        double tol = 1e-6, double ode_tol = 1e-10);

struct QeReport {
  LineField qe;                    // (4 - d^2)^{-1} phi_xi
  double max_on_positive_axis = 0.0;  // max of q_e over grid points xi > h
  double oddness_defect = 0.0;
  int zero_count = 0;
  bool negative_on_positive_axis = false;
};

QeReport qe_negativity_check(const SolitonProfile& profile);

/// Dense Fourier-collocation matrix of L_c on the periodized soliton.
struct MatrixSpectrum {
  std::vector<double> eigenvalues;  // ascending
  int negative_count = 0;
  double lambda_min = 0.0;
  double near_zero = 0.0;          // eigenvalue of smallest magnitude
  double kernel_overlap = 0.0;     // |<eigvec(near_zero), phi_xi / |phi_xi|>|
  /// Bottom of the band: the smallest eigenvalue above near_zero whose
  /// eigenvector is delocalized (outer-half mass fraction >= 0.25), capped
  /// at c - phi_max where the multiplier band starts. Isolated eigenvalues
  /// below the band have exponentially localized eigenvectors.
  double edge_estimate = 0.0;
  std::vector<double> bound_states;  // localized eigenvalues between near_zero and the band
  double symmetry_defect = 0.0;
  std::size_t n = 0;
  double period = 0.0;
};

MatrixSpectrum discretize_and_diagonalize_Lc(const PeriodicProfile& profile,
                                             double symmetry_tol = 1e-12);

struct SpectralReport {
  struct Eigenpair {
    double lambda;
    int multiplicity;
    double residual;
    bool even;
  };

  SpectralInterval essential{};
  std::vector<Eigenpair> eigenvalues;  // all discrete eigenvalues below the band, ascending
  double lambda_star = 0.0;
  int negative_count = 0;
  double theta_zero_at_origin = 0.0;  // theta^u(0, 0)
  double theta_zero_at_lambda1 = 0.0; // theta^u(0, lambda_1)
  bool quadrant_invariant = false;    // traces below lambda_1 stay in [0, pi/2]
  bool monotone_in_lambda = false;
  double half_width = 0.0;
  std::size_t grid_size = 0;
};

struct SpectrumOptions {
  double eig_tol = 1e-6;
  double bisection_tol = 1e-12;
  double ode_tol = 1e-10;
  int monotonicity_samples = 12;
  double edge_margin = 1e-6;  // relative distance from the band edge searched for eigenvalues
};

SpectralReport compute_spectrum(const SolitonProfile& profile, const SpectrumOptions& options = {});

}  // namespace dplab
