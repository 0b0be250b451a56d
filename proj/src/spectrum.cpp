#include "dplab/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "dplab/errors.hpp"
#include "dplab/helmholtz.hpp"
#include "matrices.hpp"
#include "ode_stepping.hpp"

namespace dplab {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

int sign_changes(std::span<const double> values, double floor) {
  int count = 0;
  int last = 0;
  for (double x : values) {
    if (std::abs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

ReducedCoefficient::ReducedCoefficient(const SolitonProfile& profile)
    : params_(profile.params), phi_(profile) {}

void ReducedCoefficient::check(double lambda) const {
  const double bound = params_.c() - params_.phi_max();
  if (!(lambda < bound)) {
    std::ostringstream msg;
    msg << "lambda=" << lambda << " must be below c - phi_max = " << bound;
    throw ValidationError(msg.str());
  }
}

double ReducedCoefficient::at_value(double phi, double lambda) const {
  const double c = params_.c();
  return (c - 2.0 * params_.k() - 4.0 * phi - 4.0 * lambda) / (c - phi - lambda);
}

double ReducedCoefficient::operator()(double xi, double lambda) const {
  check(lambda);
  return at_value(phi_(xi), lambda);
}

double ReducedCoefficient::far_field(double lambda) const {
  check(lambda);
  return at_value(0.0, lambda);
}

double ReducedCoefficient::lambda_derivative(double xi, double lambda) const {
  check(lambda);
  const double gap = params_.c() - phi_(xi) - lambda;
  return -params_.coupling() / (gap * gap);
}

std::optional<double> ReducedCoefficient::turning_point(double lambda) const {
  check(lambda);
  const double target = params_.essential_edge() - lambda;  // A = 0 where phi = target
  if (!(target > 0.0) || target > params_.phi_max()) return std::nullopt;
  if (target == params_.phi_max()) return 0.0;
  // phi is decreasing on [0, inf); bracket then bisect.
  double lo = 0.0;
  double hi = 1.0;
  while (phi_(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) return std::nullopt;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi_(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double coefficient_A(double xi, double lambda, const SolitonProfile& profile) {
  const ReducedCoefficient a(profile);
  return a(xi, lambda);
}

SpectralInterval essential_spectrum(const WaveParams& params) {
  // Far-field symbol range joined with the range of the multiplier c - phi.
  return {std::min(params.essential_edge(), params.c() - params.phi_max()), params.c()};
}

PruferTrace prufer_shoot(double lambda, const ReducedCoefficient& coefficient,
                         const SymmetricGrid& grid, double ode_tol) {
  const WaveParams& params = coefficient.params();
  const double bound = std::min(params.essential_edge(), params.c() - params.phi_max());
  if (!(lambda < bound)) {
    std::ostringstream msg;
    msg << "shooting requires lambda < " << bound << ", got " << lambda;
    throw ValidationError(msg.str());
  }
  if (!(ode_tol > 0.0)) throw ValidationError("ode tolerance must be positive");

  using State = std::array<double, 2>;  // theta, log rho
  auto rhs = [&](const State& x, State& dx, double xi) {
    const double a = coefficient.at_value(coefficient.phi(xi), lambda);
    const double cs = std::cos(x[0]);
    const double sn = std::sin(x[0]);
    dx[0] = a * cs * cs - sn * sn;
    dx[1] = (1.0 + a) * sn * cs;
  };
  auto stepper = detail::odeint::make_controlled(
      ode_tol, ode_tol, detail::odeint::runge_kutta_dopri5<State>());

  const std::size_t mid = grid.center();
  PruferTrace trace;
  trace.lambda = lambda;
  trace.xi.resize(mid + 1);
  trace.theta.resize(mid + 1);
  trace.log_rho.resize(mid + 1);

  const double left = grid.point(0);
  const double a_left = coefficient.at_value(coefficient.phi(left), lambda);
  trace.start_angle = std::atan(std::sqrt(std::max(a_left, 0.0)));

  State x{trace.start_angle, 0.0};
  double dt = grid.spacing();
  trace.xi[0] = left;
  trace.theta[0] = x[0];
  trace.log_rho[0] = x[1];
  for (std::size_t i = 1; i <= mid; ++i) {
    detail::advance_to(stepper, rhs, x, grid.point(i - 1), grid.point(i), dt);
    trace.xi[i] = grid.point(i);
    trace.theta[i] = x[0];
    trace.log_rho[i] = x[1];
  }
  trace.theta_at_zero = x[0];
  return trace;
}

PruferTrace prufer_shoot(double lambda, const SolitonProfile& profile, double ode_tol) {
  return prufer_shoot(lambda, ReducedCoefficient(profile), profile.grid, ode_tol);
}

NegativeEigenvalue find_negative_eigenvalue(const SolitonProfile& profile, double tol,
                                            double ode_tol) {
  if (!(tol > 0.0)) throw ValidationError("bisection tolerance must be positive");
  const ReducedCoefficient coefficient(profile);
  const WaveParams& params = profile.params;
  NegativeEigenvalue out;

  auto g = [&](double lambda) {
    const double theta = prufer_shoot(lambda, coefficient, profile.grid, ode_tol).theta_at_zero;
    out.history.push_back({lambda, theta});
    return theta;
  };

  const double scale = std::max(std::abs(params.lambda_sign_change()), 1e-300);
  double lo = params.lambda_sign_change();
  double hi = -1e-9 * scale;
  double g_lo = g(lo);
  const double g_hi = g(hi);
  if (!(g_hi < 0.0)) {
    std::ostringstream msg;
    msg << "no sign change: theta(0) = " << g_hi << " >= 0 just below lambda = 0";
    throw NumericalError(msg.str());
  }
  for (int expand = 0; !(g_lo > 0.0); ++expand) {
    if (expand >= 30) throw NumericalError("could not bracket the negative eigenvalue");
    hi = lo;
    lo -= scale * std::ldexp(1.0, expand);
    g_lo = g(lo);
  }

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.lower = lo;
  out.upper = hi;
  out.lambda_star = 0.5 * (lo + hi);
  return out;
}

Eigenfunction eigenfunction_reconstruct(double lambda, const SolitonProfile& profile, double tol,
                                        double ode_tol) {
  const ReducedCoefficient coefficient(profile);
  const auto trace = prufer_shoot(lambda, coefficient, profile.grid, ode_tol);
  const std::size_t n = profile.grid.size();
  const std::size_t mid = profile.grid.center();

  const long quarter_turns = std::lround(-2.0 * trace.theta_at_zero / std::numbers::pi);
  const bool even = quarter_turns % 2 == 0;

  // Scale by the largest log rho to keep p = O(1).
  const double peak = *std::max_element(trace.log_rho.begin(), trace.log_rho.end());
  std::vector<double> p(n);
  for (std::size_t i = 0; i <= mid; ++i) {
    p[i] = std::exp(trace.log_rho[i] - peak) * std::cos(trace.theta[i]);
  }
  if (!even) p[mid] = 0.0;
  for (std::size_t m = 1; m <= mid; ++m) p[mid + m] = even ? p[mid - m] : -p[mid - m];

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = (4.0 - coefficient.at_value(profile.values[i], lambda)) * p[i];
  }

  // Eigenvalues close to the band decay slowly; their tails are carried by
  // the exponential continuation of the line quadrature rather than the grid.
  auto v_field = LineField::make(profile.grid, std::move(v), 1.0);
  const double norm = line_norm(v_field);
  for (auto& x : v_field.samples) x /= norm;
  for (auto& x : p) x /= norm;

  Eigenfunction out{lambda, LineField::make(profile.grid, std::move(p), 1.0), std::move(v_field),
                    even};
  out.zero_count = sign_changes(out.p.samples, 1e-10 * sup_norm(out.p.samples));

  const auto image = apply_Lc(out.v, profile);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = image.samples[i] - lambda * out.v.samples[i];
  out.residual = line_norm(LineField::make(profile.grid, std::move(r), 1.0));
  if (!(out.residual <= tol)) {
    std::ostringstream msg;
    msg << "eigenfunction residual " << out.residual << " at lambda=" << lambda << " exceeds "
        << tol;
    throw NumericalError(msg.str());
  }
  return out;
}

QeReport qe_negativity_check(const SolitonProfile& profile) {
  QeReport out{inv_helmholtz_line(profile.derivative_field(), 4.0)};
  const std::size_t n = out.qe.size();
  const std::size_t mid = profile.grid.center();
  out.max_on_positive_axis = -std::numeric_limits<double>::infinity();
  for (std::size_t i = mid + 1; i < n; ++i) {
    out.max_on_positive_axis = std::max(out.max_on_positive_axis, out.qe.samples[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.oddness_defect =
        std::max(out.oddness_defect, std::abs(out.qe.samples[i] + out.qe.samples[n - 1 - i]));
  }
  const double top = sup_norm(out.qe.samples);
  out.zero_count = sign_changes(out.qe.samples, 1e-12 * top);
  out.negative_on_positive_axis = out.max_on_positive_axis < 0.0;
  return out;
}

MatrixSpectrum discretize_and_diagonalize_Lc(const PeriodicProfile& profile, double symmetry_tol) {
  const std::size_t n = profile.grid.size();
  const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };

  const double c = profile.params.c();
  const Eigen::MatrixXd m = detail::lc_matrix(profile);

  MatrixSpectrum out;
  out.n = n;
  out.period = profile.grid.period();
  out.symmetry_defect = (m - m.transpose()).cwiseAbs().maxCoeff() / m.cwiseAbs().maxCoeff();
  if (out.symmetry_defect > symmetry_tol) {
    std::ostringstream msg;
    msg << "L_c matrix symmetry defect " << out.symmetry_defect << " exceeds " << symmetry_tol;
    throw NumericalError(msg.str());
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  const auto& values = solver.eigenvalues();
  out.eigenvalues.assign(values.data(), values.data() + values.size());
  out.lambda_min = out.eigenvalues.front();

  std::size_t zero_index = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(out.eigenvalues[i]) < std::abs(out.eigenvalues[zero_index])) zero_index = i;
  }
  out.near_zero = out.eigenvalues[zero_index];
  const auto& vectors = solver.eigenvectors();
  const double quarter = 0.25 * out.period;
  out.edge_estimate = out.eigenvalues.back();
  const double multiplier_floor = c - profile.params.phi_max();
  for (std::size_t i = zero_index + 1; i < n; ++i) {
    if (out.eigenvalues[i] >= multiplier_floor) {
      out.edge_estimate = out.eigenvalues[i];
      break;
    }
    double outer = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(profile.grid.point(j)) > quarter) outer += vectors(idx(j), idx(i)) * vectors(idx(j), idx(i));
    }
    if (outer >= 0.25) {
      out.edge_estimate = out.eigenvalues[i];
      break;
    }
    out.bound_states.push_back(out.eigenvalues[i]);
  }
  for (std::size_t i = 0; i < zero_index; ++i) {
    if (out.eigenvalues[i] < 0.0) ++out.negative_count;
  }

  Eigen::VectorXd slope(idx(n));
  for (std::size_t i = 0; i < n; ++i) slope(idx(i)) = profile.derivative[i];
  slope.normalize();
  out.kernel_overlap = std::abs(vectors.col(idx(zero_index)).dot(slope));
  return out;
}

SpectralReport compute_spectrum(const SolitonProfile& profile, const SpectrumOptions& options) {
  const WaveParams& params = profile.params;
  const ReducedCoefficient coefficient(profile);
  const double lambda1 = params.lambda_sign_change();

  SpectralReport report;
  report.essential = essential_spectrum(params);
  report.half_width = profile.grid.half_width();
  report.grid_size = profile.grid.size();

  auto g = [&](double lambda) {
    return prufer_shoot(lambda, coefficient, profile.grid, options.ode_tol).theta_at_zero;
  };

  report.theta_zero_at_origin = g(0.0);
  report.theta_zero_at_lambda1 = g(lambda1);

  // Below lambda_1 the coefficient is positive everywhere, so every trace
  // starts and stays in (0, pi/2): no eigenvalue can sit there.
  const auto below = prufer_shoot(lambda1 - 0.5 * std::abs(lambda1) - 0.1 * params.c(),
                                  coefficient, profile.grid, options.ode_tol);
  report.quadrant_invariant = std::all_of(below.theta.begin(), below.theta.end(), [](double t) {
    return t >= 0.0 && t <= kHalfPi;
  });
  const double upper_angle = below.theta_at_zero;

  // theta(0, .) is strictly decreasing in lambda.
  const int samples = std::max(options.monotonicity_samples, 2);
  report.monotone_in_lambda = true;
  double previous = upper_angle;
  for (int j = 0; j <= samples; ++j) {
    const double lambda = lambda1 * (1.0 - static_cast<double>(j) / samples);
    const double angle = j == 0 ? report.theta_zero_at_lambda1
                                : (j == samples ? report.theta_zero_at_origin : g(lambda));
    if (!(angle < previous + 1e-12)) report.monotone_in_lambda = false;
    previous = angle;
  }

  // Eigenvalues below 0 correspond to levels -k pi/2 strictly between
  // theta(0, 0) and the angle below lambda_1.
  const double slack = 1e-6;
  report.negative_count = 0;
  for (int k = 0; -k * kHalfPi > report.theta_zero_at_origin + slack; ++k) {
    if (-k * kHalfPi < upper_angle) ++report.negative_count;
  }

  const auto root = find_negative_eigenvalue(profile, options.bisection_tol, options.ode_tol);
  report.lambda_star = root.lambda_star;

  // Discrete eigenvalues above 0: one for each further level -k pi/2 passed
  // before the band edge.
  std::vector<double> roots{root.lambda_star, 0.0};
  const double top = report.essential.lo * (1.0 - options.edge_margin);
  const double angle_top = g(top);
  for (int k = 2; -k * kHalfPi > angle_top; ++k) {
    const double level = -k * kHalfPi;
    double lo = 0.0;
    double hi = top;
    while (hi - lo > options.bisection_tol) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) > level ? lo : hi) = mid;
    }
    roots.push_back(0.5 * (lo + hi));
  }

  // Only the modes at and below 0 carry a residual requirement; modes close
  // to the multiplier band develop crest structure finer than the grid.
  for (double lambda : roots) {
    const double tol = lambda <= 0.0 ? options.eig_tol : std::numeric_limits<double>::infinity();
    const auto mode = eigenfunction_reconstruct(lambda, profile, tol, options.ode_tol);
    report.eigenvalues.push_back({lambda, 1, mode.residual, mode.even});
  }
  return report;
}

}  // namespace dplab
