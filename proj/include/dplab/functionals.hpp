#pragma once

#include "dplab/fields.hpp"
#include "dplab/params.hpp"

namespace dplab {

struct SolitonProfile;

struct ConservedTriple {
  double M = 0.0;
  double H = 0.0;
  double S = 0.0;
};

// Line fields use the Green's function, periodic fields the Fourier symbol.
// (4 - d^2)^{-1/2} is never formed: int ((4-d^2)^{-1/2} u)^2 = int u (4-d^2)^{-1} u.

/// M(u) = int (1 - d^2) u = int u for decaying or periodic u.
double momentum_M(const LineField& u);
double momentum_M(const PeriodicField& u);

/// H(u) = -1/6 int (u^3 + 6k u (4 - d^2)^{-1} u).
double hamiltonian_H(const LineField& u, double k);
double hamiltonian_H(const PeriodicField& u, double k);

/// S(u) = 1/2 int (1 - d^2)(4 - d^2)^{-1} u . u.
double functional_S(const LineField& u);
double functional_S(const PeriodicField& u);

ConservedTriple conserved(const LineField& u, double k);
ConservedTriple conserved(const PeriodicField& u, double k);

/// Q_c(u) = H(u) + c S(u).
double lagrangian_Q(const LineField& u, const WaveParams& params);

/// S(phi) = 1/(2(3c+2k)) int_{-inf}^0 (3 phi + 4k) phi^2 dxi, using
/// (4 - d^2)^{-1} phi = (2c phi - phi^2)/(6c + 4k) on the soliton.
double S_quadrature_reduced(const SolitonProfile& profile);

/// Pointwise defects of the two identities behind the reduced formula, with
/// w = (4 - d^2)^{-1} phi computed by the Green's function:
///   c (phi - 3w) = phi^2/2 + 2k w   and   phi - 3w = (3 phi + 4k) phi / (2(3c+2k)).
struct ReducedIdentityDefects {
  double stationarity = 0.0;
  double elimination = 0.0;
};
ReducedIdentityDefects reduced_identity_defects(const SolitonProfile& profile);

/// Closed form of S(phi(.; c)). Valid for c >= 2k > 0; 0 at c = 2k.
double S_closed_form(double c, double k);

/// dS/dc = 3c^2 (c + k) / (3c + 2k)^2 sqrt((c - 2k)/c).
double dSdc_closed_form(double c, double k);

/// L2 norm of -[phi^2/2 + 2k (4-d^2)^{-1} phi] + c (1-d^2)(4-d^2)^{-1} phi.
double traveling_residual(const LineField& phi, const WaveParams& params);
double traveling_residual(const SolitonProfile& profile);

}  // namespace dplab
