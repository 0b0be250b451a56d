#include "dplab/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dplab/errors.hpp"

namespace dplab {

WaveParams WaveParams::make(double c, double k) {
  if (!std::isfinite(c) || !std::isfinite(k)) {
    throw ValidationError("non-finite wave parameters");
  }
  if (!(k > 0.0)) {
    std::ostringstream msg;
    msg << "k>0 violated (k=" << k << ")";
    throw ValidationError(msg.str());
  }
  if (!(c > 2.0 * k)) {
    std::ostringstream msg;
    msg << "c>2k violated (c=" << c << ", k=" << k << ")";
    throw ValidationError(msg.str());
  }
  return WaveParams(c, k);
}

WaveParams::WaveParams(double c, double k) : c_(c), k_(k) {
  const double radical = std::sqrt(2.0 / 9.0 * k * (3.0 * c + 2.0 * k));
  phi_plus_ = c - 2.0 / 3.0 * k + radical;
  // phi_+ phi_- = 2 P(0) = c (c - 2k); the product form avoids cancellation
  // as c -> 2k.
  phi_minus_ = c * (c - 2.0 * k) / phi_plus_;
}

double WaveParams::tail_rate() const { return std::sqrt((c_ - 2.0 * k_) / c_); }

double WaveParams::lambda_zero() const {
  return std::min(essential_edge(), 0.5 * (c_ - phi_max()));
}

double quadratic_P(double phi, const WaveParams& params) {
  const double c = params.c();
  const double k = params.k();
  return 0.5 * phi * phi - c * phi + 2.0 / 3.0 * k * phi + 0.5 * c * c - k * c;
}

PhiRoots phi_extremes(const WaveParams& params) {
  return {params.phi_minus(), params.phi_plus()};
}

double first_integral(double phi, double psi, const WaveParams& params) {
  const double gap = params.c() - phi;
  return phi * phi * quadratic_P(phi, params) - 0.5 * gap * gap * psi * psi;
}

}  // namespace dplab
