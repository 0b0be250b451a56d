#pragma once

#include <complex>
#include <optional>

#include "dplab/fields.hpp"

namespace dplab {

struct SolitonProfile;
struct PeriodicProfile;

/// Fourier multipliers of the operators that appear in the DP Hamiltonian
/// structure, with d/dx <-> i omega.
enum class SymbolKind {
  InvHelmholtz4,  // (4 - d^2)^{-1}     1/(4 + w^2)
  InvHelmholtz1,  // (1 - d^2)^{-1}     1/(1 + w^2)
  Helmholtz4,     // (4 - d^2)          4 + w^2
  Helmholtz1,     // (1 - d^2)          1 + w^2
  SMultiplier,    // (1 - d^2)(4 - d^2)^{-1}
  J,              // d (4 - d^2)(1 - d^2)^{-1}
  Dx,             // d
};

std::complex<double> symbol(SymbolKind kind, double omega);

/// Odd symbols are purely imaginary; they annihilate the Nyquist mode.
bool symbol_is_odd(SymbolKind kind);

/// (a - d^2)^{-1} f on the line: convolution with exp(-sqrt(a)|x|)/(2 sqrt(a)).
///
/// The two one-sided exponential integrals are swept recursively across the
/// grid; each cell uses product integration of the kernel against a 6-point
/// interpolant of f, so the result is sixth-order accurate and exact for the
/// kernel's kink at x = s. Beyond the grid f is continued exponentially
/// (rate `tail_rate` if given, else fitted to the two outermost samples).
/// Throws ValidationError if f does not decay.
LineField inv_helmholtz_line(const LineField& f, double a,
                             std::optional<double> tail_rate = std::nullopt);

/// d/dx (a - d^2)^{-1} f on the line, from the same one-sided integrals.
LineField inv_helmholtz_line_derivative(const LineField& f, double a);

/// Spectral derivative of a decaying line field (treated as periodic on n h).
LineField line_derivative(const LineField& f);

/// J f = f' + 3 d/dx (1 - d^2)^{-1} f on the line.
LineField apply_J_line(const LineField& f);

/// Exact diagonal action of a multiplier on the discrete Fourier basis.
PeriodicField apply_periodic(SymbolKind kind, const PeriodicField& f);

/// L_c v = (c - phi) v - (3c + 2k)(4 - d^2)^{-1} v.
LineField apply_Lc(const LineField& v, const SolitonProfile& profile);
PeriodicField apply_Lc(const PeriodicField& v, const PeriodicProfile& profile);

}  // namespace dplab
