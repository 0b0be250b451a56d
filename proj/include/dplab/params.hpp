#pragma once

#include <utility>

namespace dplab {

/// Wave speed c and linear-dispersion parameter k of a DP solitary wave.
/// Construction enforces c > 2k > 0; every derived scalar is then finite.
class WaveParams {
 public:
  /// Throws ValidationError naming the violated constraint.
  static WaveParams make(double c, double k);

  double c() const { return c_; }
  double k() const { return k_; }

  /// Roots of P, phi_minus < phi_plus. The smaller root is the wave height.
  double phi_minus() const { return phi_minus_; }
  double phi_plus() const { return phi_plus_; }
  double phi_max() const { return phi_minus_; }

  /// Exponential decay rate of the tail, sqrt((c-2k)/c).
  double tail_rate() const;

  /// Left edge (c-2k)/4 of the essential spectrum of L_c.
  double essential_edge() const { return 0.25 * (c_ - 2.0 * k_); }

  /// lambda_1 = (c-2k)/4 - phi_max: below it the reduced coefficient A is
  /// positive everywhere.
  double lambda_sign_change() const { return essential_edge() - phi_max(); }

  /// min{(c-2k)/4, (c-phi_max)/2}.
  double lambda_zero() const;

  /// 3c + 2k, the coupling in front of (4-d^2)^{-1} in L_c.
  double coupling() const { return 3.0 * c_ + 2.0 * k_; }

 private:
  WaveParams(double c, double k);

  double c_;
  double k_;
  double phi_minus_;
  double phi_plus_;
};

inline WaveParams validate_params(double c, double k) { return WaveParams::make(c, k); }

/// P(phi) = phi^2/2 - c phi + 2/3 k phi + c^2/2 - k c.
double quadratic_P(double phi, const WaveParams& params);

struct PhiRoots {
  double minus;
  double plus;
};

PhiRoots phi_extremes(const WaveParams& params);

/// First integral of the profile system,
/// Phi(phi, psi) = phi^2 P(phi) - (c - phi)^2 psi^2 / 2.
double first_integral(double phi, double psi, const WaveParams& params);

}  // namespace dplab
