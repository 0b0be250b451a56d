#include "dplab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dplab/errors.hpp"
#include "dplab/helmholtz.hpp"
#include "fft.hpp"
#include "matrices.hpp"

namespace dplab {

namespace {

using Spectrum = std::vector<std::complex<double>>;
constexpr std::complex<double> kI{0.0, 1.0};

// Spectral form of the full flow on a fixed grid.
class FullFlow {
 public:
  FullFlow(const PeriodicGrid& grid, double k, bool dealias)
      : grid_(grid), fft_(grid.size()), nonlinear_(fft_.spectrum_size()),
        linear_(fft_.spectrum_size()), keep_(fft_.spectrum_size(), true) {
    const std::size_t n = grid.size();
    for (std::size_t j = 0; j < nonlinear_.size(); ++j) {
      const double w = grid.wavenumber(j);
      nonlinear_[j] = -kI * w * (4.0 + w * w) / (1.0 + w * w);
      linear_[j] = -2.0 * k * kI * w / (1.0 + w * w);
      if (dealias) keep_[j] = 3 * j <= n;
    }
    nonlinear_.back() = 0.0;
    linear_.back() = 0.0;
  }

  Spectrum forward(std::span<const double> u) const { return fft_.forward(u); }
  std::vector<double> inverse(const Spectrum& s) const { return fft_.inverse(s); }
  const Spectrum& linear() const { return linear_; }

  Spectrum nonlinear(const Spectrum& u_hat) const {
    auto u = fft_.inverse(u_hat);
    for (auto& x : u) x = 0.5 * x * x;
    auto q = fft_.forward(u);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] = keep_[j] ? nonlinear_[j] * q[j] : 0.0;
    return q;
  }

  Spectrum full(const Spectrum& u_hat) const {
    auto out = nonlinear(u_hat);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += linear_[j] * u_hat[j];
    return out;
  }

 private:
  PeriodicGrid grid_;
  detail::RealFft fft_;
  Spectrum nonlinear_;
  Spectrum linear_;
  std::vector<bool> keep_;
};

Spectrum axpy(const Spectrum& x, double a, const Spectrum& y) {
  Spectrum out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + a * y[j];
  return out;
}

void rk4_step(const FullFlow& flow, Spectrum& u, double h) {
  const auto k1 = flow.full(u);
  const auto k2 = flow.full(axpy(u, 0.5 * h, k1));
  const auto k3 = flow.full(axpy(u, 0.5 * h, k2));
  const auto k4 = flow.full(axpy(u, h, k3));
  for (std::size_t j = 0; j < u.size(); ++j) {
    u[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
}

// RK4 on exp(-L t) u with the dispersive part L integrated exactly.
void if_rk4_step(const FullFlow& flow, Spectrum& u, double h) {
  const auto& lin = flow.linear();
  const std::size_t m = u.size();
  Spectrum half(m), whole(m);
  for (std::size_t j = 0; j < m; ++j) {
    half[j] = std::exp(0.5 * h * lin[j]);
    whole[j] = half[j] * half[j];
  }
  auto scale = [&](const Spectrum& e, const Spectrum& x) {
    Spectrum out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = e[j] * x[j];
    return out;
  };

  const auto a = flow.nonlinear(u);
  const auto u_half = scale(half, u);
  const auto b = flow.nonlinear(axpy(u_half, 0.5 * h, scale(half, a)));
  const auto c = flow.nonlinear(axpy(u_half, 0.5 * h, b));
  const auto d = flow.nonlinear(axpy(scale(whole, u), h, scale(half, c)));
  for (std::size_t j = 0; j < m; ++j) {
    u[j] = whole[j] * u[j] +
           h / 6.0 * (whole[j] * a[j] + 2.0 * half[j] * (b[j] + c[j]) + d[j]);
  }
}

double relative_change(double now, double start) {
  const double diff = std::abs(now - start);
  return start != 0.0 ? diff / std::abs(start) : diff;
}

}  // namespace

PeriodicField dp_rhs(const PeriodicField& u, double k, bool dealias) {
  const FullFlow flow(u.grid, k, dealias);
  return PeriodicField::make(u.grid, flow.inverse(flow.full(flow.forward(u.samples))));
}

PeriodicField dp_rhs_mform(const PeriodicField& u, double k) {
  const auto m = apply_periodic(SymbolKind::Helmholtz1, u);
  const auto ux = apply_periodic(SymbolKind::Dx, u);
  const auto mx = apply_periodic(SymbolKind::Dx, m);
  std::vector<double> mt(u.size());
  for (std::size_t i = 0; i < mt.size(); ++i) {
    mt[i] = -2.0 * k * ux[i] - 3.0 * m[i] * ux[i] - u[i] * mx[i];
  }
  return apply_periodic(SymbolKind::InvHelmholtz1, PeriodicField::make(u.grid, std::move(mt)));
}

EvolutionResult evolve(const PeriodicField& u0, double k, const EvolutionConfig& config,
                       const SnapshotSink& sink) {
  const double dt = config.dt;
  if (!(std::isfinite(dt) && dt != 0.0)) throw ValidationError("dt must be finite and nonzero");
  if (!(config.T >= 0.0)) throw ValidationError("T must be nonnegative");
  const double step = std::abs(dt);
  const auto steps = static_cast<std::size_t>(std::llround(config.T / step));
  if (std::abs(static_cast<double>(steps) * step - config.T) > 1e-9 * std::max(config.T, step)) {
    std::ostringstream msg;
    msg << "T=" << config.T << " is not an integer multiple of dt=" << step;
    throw ValidationError(msg.str());
  }
  if (config.series_stride == 0) throw ValidationError("series stride must be positive");

  const double h = u0.grid.spacing();
  const double peak0 = sup_norm(u0.samples);
  EvolutionResult result{u0, 0.0, 0, {}, {}, 0.0, false, {}};
  result.cfl_number = step * peak0 / h;
  if (result.cfl_number > config.cfl) {
    std::ostringstream msg;
    msg << "CFL bound violated: dt max|u|/h = " << result.cfl_number << " > C = " << config.cfl;
    throw ValidationError(msg.str());
  }

  const FullFlow flow(u0.grid, k, config.dealias);
  Spectrum u_hat = flow.forward(u0.samples);
  const ConservedTriple start = conserved(u0, k);
  result.series.push_back({0.0, start});
  if (sink && config.snapshot_stride > 0) sink({0.0, u0});

  for (std::size_t s = 1; s <= steps; ++s) {
    if (config.integrating_factor) {
      if_rk4_step(flow, u_hat, dt);
    } else {
      rk4_step(flow, u_hat, dt);
    }
    const double t = static_cast<double>(s) * dt;
    auto u = PeriodicField::make(u0.grid, flow.inverse(u_hat));
    const ConservedTriple now = conserved(u, k);
    result.max_drift.M = std::max(result.max_drift.M, relative_change(now.M, start.M));
    result.max_drift.H = std::max(result.max_drift.H, relative_change(now.H, start.H));
    result.max_drift.S = std::max(result.max_drift.S, relative_change(now.S, start.S));
    result.steps = s;
    result.t_final = t;
    if (s % config.series_stride == 0 || s == steps) result.series.push_back({t, now});
    if (sink && config.snapshot_stride > 0 && s % config.snapshot_stride == 0) sink({t, u});

    const double peak = sup_norm(u.samples);
    const double drift = std::max({result.max_drift.M, result.max_drift.H, result.max_drift.S});
    std::ostringstream reason;
    if (!std::isfinite(peak)) {
      reason << "non-finite field at t=" << t;
    } else if (peak0 > 0.0 && peak > config.blowup_factor * peak0) {
      reason << "max|u| = " << peak << " exceeded " << config.blowup_factor << " x initial at t=" << t;
    } else if (!(drift <= config.drift_halt)) {
      reason << "conserved drift " << drift << " exceeded " << config.drift_halt << " at t=" << t;
    }
    result.final_state = std::move(u);
    if (!reason.str().empty()) {
      result.halted = true;
      result.halt_reason = reason.str();
      if (result.series.back().t != t) result.series.push_back({t, now});
      break;
    }
  }
  return result;
}

OrbitDistance orbit_distance(const PeriodicField& u, const PeriodicField& reference) {
  if (!(u.grid == reference.grid)) throw ValidationError("grid mismatch between fields");
  const std::size_t n = u.size();
  const PeriodicGrid& grid = u.grid;
  detail::RealFft fft(n);
  const auto u_hat = fft.forward(u.samples);
  const auto r_hat = fft.forward(reference.samples);

  Spectrum z(u_hat.size());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = u_hat[j] * std::conj(r_hat[j]);
  const auto corr = fft.inverse(z);  // corr[m] ~ <u, ref(. - m h)>

  const std::size_t best =
      static_cast<std::size_t>(std::max_element(corr.begin(), corr.end()) - corr.begin());
  const double left = corr[(best + n - 1) % n];
  const double mid = corr[best];
  const double right = corr[(best + 1) % n];
  const double curvature = left - 2.0 * mid + right;
  const double offset = curvature < 0.0 ? 0.5 * (left - right) / curvature : 0.0;
  double s = (static_cast<double>(best) + offset) * grid.spacing();
  if (s > 0.5 * grid.period()) s -= grid.period();

  // Newton on C'(s) = 0 with C(s) = sum_j w_j Re(z_j exp(i w_j s)).
  for (int it = 0; it < 30; ++it) {
    double d1 = 0.0;
    double d2 = 0.0;
    for (std::size_t j = 1; j + 1 < z.size(); ++j) {
      const double w = grid.wavenumber(j);
      const auto term = z[j] * std::exp(kI * w * s);
      d1 += -2.0 * w * term.imag();
      d2 += -2.0 * w * w * term.real();
    }
    if (!(d2 < 0.0)) break;
    const double delta = d1 / d2;
    s -= delta;
    if (std::abs(delta) < 1e-15 * grid.period()) break;
  }

  Spectrum shifted(r_hat.size());
  for (std::size_t j = 0; j < shifted.size(); ++j) {
    shifted[j] = r_hat[j] * std::exp(-kI * grid.wavenumber(j) * s);
  }
  shifted.back() = shifted.back().real();
  const auto moved = fft.inverse(shifted);
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = u.samples[i] - moved[i];
  return {periodic_norm(PeriodicField::make(grid, std::move(diff))), s};
}

PeriodicField linearized_rhs(const PeriodicField& v, const PeriodicProfile& profile) {
  return apply_periodic(SymbolKind::J, apply_Lc(v, profile));
}

LinearizedRun evolve_linearized(const PeriodicField& v0, const PeriodicProfile& profile, double dt,
                                double T, std::size_t record_stride) {
  if (!(v0.grid == profile.grid)) throw ValidationError("grid mismatch between field and profile");
  if (!(dt > 0.0) || !(T >= 0.0)) throw ValidationError("need dt > 0 and T >= 0");
  if (record_stride == 0) throw ValidationError("record stride must be positive");
  const auto steps = static_cast<std::size_t>(std::llround(T / dt));

  // Stability of RK4 on the imaginary axis: |lambda| dt <= 2 sqrt(2).
  const double top = profile.grid.wavenumber(profile.grid.size() / 2);
  const double radius = top * (4.0 + top * top) / (1.0 + top * top) * profile.params.c();
  if (dt * radius > 2.8) {
    std::ostringstream msg;
    msg << "dt=" << dt << " exceeds the RK4 stability bound " << 2.8 / radius;
    throw ValidationError(msg.str());
  }

  const std::size_t n = v0.size();
  std::vector<double> v = v0.samples;
  auto rhs = [&](const std::vector<double>& x) {
    return linearized_rhs(PeriodicField::make(profile.grid, x), profile).samples;
  };
  auto combine = [&](const std::vector<double>& x, double a, const std::vector<double>& y) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + a * y[i];
    return out;
  };

  LinearizedRun run{{}, {}, v0};
  auto record = [&](double t) {
    run.times.push_back(t);
    run.norms.push_back(periodic_norm(PeriodicField::make(profile.grid, v)));
  };
  record(0.0);
  for (std::size_t s = 1; s <= steps; ++s) {
    const auto k1 = rhs(v);
    const auto k2 = rhs(combine(v, 0.5 * dt, k1));
    const auto k3 = rhs(combine(v, 0.5 * dt, k2));
    const auto k4 = rhs(combine(v, dt, k3));
    for (std::size_t i = 0; i < n; ++i) v[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (s % record_stride == 0 || s == steps) record(static_cast<double>(s) * dt);
  }
  run.final_state = PeriodicField::make(profile.grid, std::move(v));
  return run;
}

GrowthFit growth_rate_fit(const std::vector<double>& times, const std::vector<double>& norms) {
  if (times.size() != norms.size()) throw ValidationError("times and norms differ in length");
  if (times.size() < 3) throw ValidationError("growth-rate fit needs at least 3 samples");
  const double n = static_cast<double>(times.size());
  std::vector<double> y(times.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(norms[i]) || !(norms[i] > std::numeric_limits<double>::min())) {
      std::ostringstream msg;
      msg << "ill-conditioned fit: norm " << norms[i] << " at t=" << times[i];
      throw NumericalError(msg.str());
    }
    y[i] = std::log(norms[i]);
  }
  double tm = 0.0;
  double ym = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    tm += times[i];
    ym += y[i];
  }
  tm /= n;
  ym /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sxx += (times[i] - tm) * (times[i] - tm);
    sxy += (times[i] - tm) * (y[i] - ym);
  }
  if (!(sxx > 0.0)) throw ValidationError("growth-rate fit needs distinct times");
  GrowthFit fit;
  fit.samples = y.size();
  fit.sigma = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - ym - fit.sigma * (times[i] - tm);
    ssr += r * r;
  }
  fit.std_error = std::sqrt(ssr / (n - 2.0) / sxx);
  fit.lower = fit.sigma - 2.0 * fit.std_error;
  fit.upper = fit.sigma + 2.0 * fit.std_error;
  return fit;
}

PeriodicField periodic_dphi_dc(const WaveParams& params, const PeriodicGrid& grid, double delta_c) {
  const double c = params.c();
  const double k = params.k();
  const double step = delta_c > 0.0 ? delta_c : 1e-4 * c;
  const auto plus = periodize(WaveParams::make(c + step, k), grid, 1e-6);
  const auto minus = periodize(WaveParams::make(c - step, k), grid, 1e-6);
  std::vector<double> d(grid.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (plus.values[i] - minus.values[i]) / (2.0 * step);
  return PeriodicField::make(grid, std::move(d));
}

PeriodicField project_generalized_kernel(const PeriodicField& v, const PeriodicProfile& profile,
                                         const PeriodicField& dphi_dc) {
  const auto w = apply_periodic(SymbolKind::SMultiplier, profile.field());
  const double alpha = periodic_inner(w, v) / periodic_inner(w, dphi_dc);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i] - alpha * dphi_dc[i];
  return PeriodicField::make(v.grid, std::move(out));
}

PeriodicField random_smooth_field(const PeriodicGrid& grid, std::uint64_t seed, double decay,
                                  std::size_t max_mode) {
  const std::size_t n = grid.size();
  const std::size_t top = max_mode > 0 ? std::min(max_mode, n / 2) : std::max<std::size_t>(n / 8, 2);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> out(n, 0.0);
  for (std::size_t m = 1; m < top; ++m) {
    const double amp = std::exp(-decay * static_cast<double>(m));
    const double a = amp * normal(rng);
    const double b = amp * normal(rng);
    const double w = grid.wavenumber(m);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.point(i);
      out[i] += a * std::cos(w * x) + b * std::sin(w * x);
    }
  }
  auto field = PeriodicField::make(grid, std::move(out));
  const double norm = periodic_norm(field);
  if (!(norm > 0.0)) throw NumericalError("random field has zero norm");
  for (auto& value : field.samples) value /= norm;
  return field;
}

GrowthProbe linearized_growth_probe(const PeriodicProfile& profile, const PeriodicField& dphi_dc,
                                    std::uint64_t seed, double dt, double T) {
  const auto v0 =
      project_generalized_kernel(random_smooth_field(profile.grid, seed), profile, dphi_dc);
  const auto stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / dt)));
  const auto run = evolve_linearized(v0, profile, dt, T, stride);
  return {seed, growth_rate_fit(run.times, run.norms)};
}

JlcSpectrum jlc_matrix_spectrum(const PeriodicProfile& profile) {
  const Eigen::MatrixXd m =
      detail::multiplier_matrix(SymbolKind::J, profile.grid) * detail::lc_matrix(profile);
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed on J L_c");

  const auto& values = solver.eigenvalues();
  const auto size = values.size();
  JlcSpectrum out;
  out.n = profile.grid.size();
  out.eigenvalues.assign(values.data(), values.data() + size);
  out.max_real_part = -std::numeric_limits<double>::infinity();
  Eigen::Index growing = 0;
  Eigen::Index smallest = 0;
  for (Eigen::Index i = 0; i < size; ++i) {
    out.spectral_radius = std::max(out.spectral_radius, std::abs(values(i)));
    if (values(i).real() > out.max_real_part) {
      out.max_real_part = values(i).real();
      growing = i;
    }
    if (std::abs(values(i)) < std::abs(values(smallest))) smallest = i;
  }
  for (Eigen::Index i = 0; i < size; ++i) {
    const std::complex<double> mirror = -std::conj(values(i));
    double nearest = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < size; ++j) nearest = std::min(nearest, std::abs(values(j) - mirror));
    out.hamiltonian_defect = std::max(out.hamiltonian_defect, nearest);
  }
  out.hamiltonian_defect /= out.spectral_radius;

  // J also annihilates the mean and Nyquist modes on the circle, so the zero
  // eigenvalue is not simple; measure d_xi phi against the whole cluster.
  const double zero_tol = 1e-6 * out.spectral_radius;
  std::vector<Eigen::Index> cluster;
  for (Eigen::Index i = 0; i < size; ++i) {
    if (std::abs(values(i)) <= zero_tol) cluster.push_back(i);
  }
  if (cluster.empty()) cluster.push_back(smallest);
  Eigen::MatrixXcd basis(size, static_cast<Eigen::Index>(cluster.size()));
  for (std::size_t j = 0; j < cluster.size(); ++j) {
    basis.col(static_cast<Eigen::Index>(j)) = solver.eigenvectors().col(cluster[j]);
  }
  out.kernel_dimension = cluster.size();
  Eigen::VectorXd slope(size);
  for (Eigen::Index i = 0; i < size; ++i) slope(i) = profile.derivative[static_cast<std::size_t>(i)];
  slope.normalize();
  const Eigen::VectorXcd target = slope.cast<std::complex<double>>();
  const Eigen::VectorXcd fitted = basis * basis.colPivHouseholderQr().solve(target);
  out.kernel_overlap = std::abs(fitted.dot(target)) / std::max(fitted.norm(), 1e-300);

  const Eigen::VectorXcd mode = solver.eigenvectors().col(growing);
  out.growing_mode.resize(static_cast<std::size_t>(size));
  // Rotate so the real part carries the mode.
  Eigen::Index anchor = 0;
  mode.cwiseAbs().maxCoeff(&anchor);
  const std::complex<double> phase = std::abs(mode(anchor)) > 0.0 ? std::conj(mode(anchor)) / std::abs(mode(anchor)) : 1.0;
  for (Eigen::Index i = 0; i < size; ++i) out.growing_mode[static_cast<std::size_t>(i)] = (phase * mode(i)).real();
  return out;
}

std::vector<double> jlc_resolution_trend(const WaveParams& params, double period,
                                         const std::vector<std::size_t>& sizes) {
  std::vector<double> out;
  out.reserve(sizes.size());
  for (std::size_t n : sizes) {
    out.push_back(jlc_matrix_spectrum(periodize(params, PeriodicGrid(period, n))).max_real_part);
  }
  return out;
}

}  // namespace dplab
