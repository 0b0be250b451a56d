#include "dplab/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "dplab/errors.hpp"
#include "ode_stepping.hpp"

namespace dplab {

namespace {

using State = std::array<double, 1>;

constexpr double kCrossover = 0.5;  // switch to log(phi) below this fraction of the crest
constexpr std::size_t kStencil = 8;

auto make_stepper(double abs_tol, double rel_tol) {
  return detail::odeint::make_controlled(abs_tol, rel_tol,
                                         detail::odeint::runge_kutta_fehlberg78<State>());
}

}  // namespace

ProfileSamples profile_at(const WaveParams& params, std::span<const double> abscissae) {
  const double c = params.c();
  const double top = params.phi_minus();
  const double far = params.phi_plus();

  ProfileSamples out;
  out.values.resize(abscissae.size());
  out.slopes.resize(abscissae.size());
  if (abscissae.empty()) return out;
  if (abscissae.front() < 0.0) throw ValidationError("profile abscissae must be nonnegative");
  for (std::size_t i = 1; i < abscissae.size(); ++i) {
    if (abscissae[i] < abscissae[i - 1]) throw ValidationError("profile abscissae must be ascending");
  }

  // Crest phase: phi = top - t^2, t(0) = 0, dt/ds regular at the turning point.
  auto crest_rhs = [&](const State& x, State& dxds, double) {
    const double phi = top - x[0] * x[0];
    dxds[0] = phi * std::sqrt(std::max(far - phi, 0.0)) / (2.0 * (c - phi));
  };
  // Tail phase: y = log(phi).
  auto tail_rhs = [&](const State& x, State& dxds, double) {
    const double phi = std::exp(x[0]);
    const double radicand = std::max((far - phi) * (top - phi), 0.0);
    dxds[0] = -std::sqrt(radicand) / (c - phi);
  };

  auto crest = make_stepper(1e-15, 1e-14);
  auto tail = make_stepper(1e-14, 1e-14);

  State x{0.0};
  double s = 0.0;
  double dt = 1e-3;
  bool in_tail = false;
  for (std::size_t i = 0; i < abscissae.size(); ++i) {
    const double target = abscissae[i];
    if (!in_tail) {
      detail::advance_to(crest, crest_rhs, x, s, target, dt);
      const double t = x[0];
      const double phi = top - t * t;
      out.values[i] = phi;
      out.slopes[i] = phi * t * std::sqrt(std::max(far - phi, 0.0)) / (c - phi);
      if (phi < kCrossover * top) {
        in_tail = true;
        x[0] = std::log(phi);
      }
    } else {
      detail::advance_to(tail, tail_rhs, x, s, target, dt);
      const double phi = std::exp(x[0]);
      out.values[i] = phi;
      out.slopes[i] = phi * std::sqrt(std::max((far - phi) * (top - phi), 0.0)) / (c - phi);
    }
    s = target;
  }
  return out;
}

LineField SolitonProfile::field() const { return LineField::make(grid, values); }

LineField SolitonProfile::derivative_field() const { return LineField::make(grid, derivative); }

SolitonProfile compute_profile(const WaveParams& params, const SymmetricGrid& grid, double tol) {
  const std::size_t n = grid.size();
  const std::size_t mid = grid.center();

  std::vector<double> abscissae(mid + 1);
  for (std::size_t m = 0; m <= mid; ++m) abscissae[m] = grid.point(mid + m);
  const ProfileSamples half = profile_at(params, abscissae);

  SolitonProfile profile{params, grid, std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t m = 0; m <= mid; ++m) {
    profile.values[mid + m] = half.values[m];
    profile.values[mid - m] = half.values[m];
    profile.derivative[mid + m] = -half.slopes[m];
    profile.derivative[mid - m] = half.slopes[m];
  }
  profile.derivative[mid] = 0.0;
  profile.values[mid] = params.phi_max();
  profile.phi_max = params.phi_max();
  profile.tail_rate = params.tail_rate();

  const double scale = params.phi_max() * params.phi_max() * quadratic_P(0.0, params);
  double residual = 0.0;
  double evenness = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    residual = std::max(residual,
                        std::abs(first_integral(profile.values[i], profile.derivative[i], params)));
    evenness = std::max(evenness, std::abs(profile.values[i] - profile.values[n - 1 - i]));
  }
  profile.first_integral_residual = residual / scale;
  profile.evenness_defect = evenness;
  profile.tail_value = std::max(profile.values.front(), profile.values.back());

  if (profile.tail_value >= tol) {
    std::ostringstream msg;
    msg << "grid half-width L=" << grid.half_width() << " too small: tail residual "
        << profile.tail_value << " >= " << tol;
    throw ValidationError(msg.str());
  }
  if (!(profile.first_integral_residual <= tol)) {
    std::ostringstream msg;
    msg << "profile first-integral residual " << profile.first_integral_residual
        << " exceeds " << tol;
    throw NumericalError(msg.str());
  }
  return profile;
}

SolitonProfile compute_profile(const WaveParams& params, double tol) {
  return compute_profile(params, SymmetricGrid::for_params(params), tol);
}

ProfileInterpolant::ProfileInterpolant(const SolitonProfile& profile)
    : half_(profile.values.begin() + static_cast<std::ptrdiff_t>(profile.grid.center()),
            profile.values.end()),
      spacing_(profile.grid.spacing()),
      half_width_(profile.grid.half_width()),
      tail_rate_(profile.tail_rate),
      barycentric_(kStencil) {
  // Equispaced barycentric weights (-1)^j binom(7, j).
  double binom = 1.0;
  for (std::size_t j = 0; j < kStencil; ++j) {
    barycentric_[j] = (j % 2 == 0 ? 1.0 : -1.0) * binom;
    binom = binom * static_cast<double>(kStencil - 1 - j) / static_cast<double>(j + 1);
  }
}

double ProfileInterpolant::operator()(double xi) const {
  const double s = std::abs(xi);
  const auto last = static_cast<long long>(half_.size()) - 1;
  if (s >= half_width_) return half_.back() * std::exp(-tail_rate_ * (s - half_width_));

  const double u = s / spacing_;
  const auto cell = static_cast<long long>(std::floor(u));
  long long first = cell - 3;
  const long long stencil_last = static_cast<long long>(kStencil) - 1;
  if (first + stencil_last > last) first = last - stencil_last;

  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < kStencil; ++j) {
    const long long m = first + static_cast<long long>(j);
    const double value = half_[static_cast<std::size_t>(std::llabs(m))];  // even extension
    const double offset = u - static_cast<double>(m);
    if (offset == 0.0) return value;
    const double w = barycentric_[j] / offset;
    num += w * value;
    den += w;
  }
  return num / den;
}

PeriodicField PeriodicProfile::field() const { return PeriodicField::make(grid, values); }

PeriodicField PeriodicProfile::derivative_field() const {
  return PeriodicField::make(grid, derivative);
}

PeriodicProfile periodize(const WaveParams& params, const PeriodicGrid& grid, double tail_tol) {
  const std::size_t n = grid.size();
  const std::size_t mid = n / 2;
  std::vector<double> abscissae(mid + 1);
  for (std::size_t m = 0; m <= mid; ++m) abscissae[m] = static_cast<double>(m) * grid.spacing();
  const ProfileSamples half = profile_at(params, abscissae);

  PeriodicProfile out{params, grid, std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t m = 0; m <= mid; ++m) {
    out.values[mid - m] = half.values[m];
    out.derivative[mid - m] = half.slopes[m];
    if (m > 0 && mid + m < n) {
      out.values[mid + m] = half.values[m];
      out.derivative[mid + m] = -half.slopes[m];
    }
  }
  out.values[mid] = params.phi_max();
  out.derivative[mid] = 0.0;
  // The seam point x = -P/2 is shared by both sides; its derivative is
  // ambiguous at the level of the wrapped tail.
  out.derivative[0] = 0.0;
  out.wrapped_tail = half.values[mid];
  if (out.wrapped_tail >= tail_tol) {
    std::ostringstream msg;
    msg << "period " << grid.period() << " too short: wrapped tail " << out.wrapped_tail
        << " >= " << tail_tol;
    throw ValidationError(msg.str());
  }
  return out;
}

PeriodicGrid periodic_grid_for(const WaveParams& params, double max_spacing, double tail_tol) {
  const double period = 2.0 * SymmetricGrid::for_params(params, tail_tol, 3).half_width();
  std::size_t n = 4;
  while (period / static_cast<double>(n) > max_spacing) n *= 2;
  return PeriodicGrid(period, n);
}

SpeedDerivative dphi_dc(const WaveParams& params, const SymmetricGrid& grid, double delta_c,
                        bool richardson, double check_tol) {
  const double c = params.c();
  const double k = params.k();
  const double step = delta_c > 0.0 ? delta_c : 1e-4 * c;
  if (!(c - step > 2.0 * k)) {
    std::ostringstream msg;
    msg << "c - delta_c = " << c - step << " violates c>2k";
    throw ValidationError(msg.str());
  }

  auto difference = [&](double h) {
    // The tail check uses a looser tolerance: both neighbours share the grid
    // sized for c.
    const auto plus = compute_profile(WaveParams::make(c + h, k), grid, 1e-6);
    const auto minus = compute_profile(WaveParams::make(c - h, k), grid, 1e-6);
    std::vector<double> d(grid.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (plus.values[i] - minus.values[i]) / (2.0 * h);
    return d;
  };

  const auto coarse = difference(step);
  const auto fine = difference(0.5 * step);

  SpeedDerivative out;
  out.delta_c = step;
  out.richardson = richardson;
  double diff = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) diff = std::max(diff, std::abs(coarse[i] - fine[i]));
  out.truncation_estimate = 4.0 / 3.0 * diff;
  // Profile samples carry ~1e-14 relative error from the ODE tolerance.
  out.roundoff_estimate = 1e-14 * params.phi_max() / step;

  if (richardson) {
    out.values.resize(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) out.values[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  } else {
    out.values = coarse;
  }
  out.scale = sup_norm(out.values);

  if (out.truncation_estimate > check_tol * out.scale) {
    std::ostringstream msg;
    msg << "delta_c=" << step << " too large: Richardson check failed (truncation estimate "
        << out.truncation_estimate << ")";
    throw NumericalError(msg.str());
  }
  if (out.roundoff_estimate > check_tol * out.scale) {
    std::ostringstream msg;
    msg << "delta_c=" << step << " too small: roundoff dominated (estimate "
        << out.roundoff_estimate << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

std::vector<double> peakon_limit_deviation(double c, std::span<const double> k_sequence,
                                           double compact_half_width) {
  std::vector<double> out;
  out.reserve(k_sequence.size());
  for (double k : k_sequence) {
    const auto params = WaveParams::make(c, k);
    const auto profile = compute_profile(params);
    double dev = 0.0;
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
      const double xi = profile.grid.point(i);
      if (std::abs(xi) > compact_half_width) continue;
      dev = std::max(dev, std::abs(profile.values[i] - c * std::exp(-std::abs(xi))));
    }
    out.push_back(dev);
  }
  return out;
}

double crest_curvature(const WaveParams& params) {
  const double top = params.phi_max();
  return top * ((params.c() - 2.0 * params.k()) - 2.0 * top) / (params.c() - top);
}

}  // namespace dplab
