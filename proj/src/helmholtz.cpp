#include "dplab/helmholtz.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "dplab/errors.hpp"
#include "dplab/profile.hpp"
#include "fft.hpp"

namespace dplab {

std::complex<double> symbol(SymbolKind kind, double omega) {
  const double w2 = omega * omega;
  switch (kind) {
    case SymbolKind::InvHelmholtz4: return 1.0 / (4.0 + w2);
    case SymbolKind::InvHelmholtz1: return 1.0 / (1.0 + w2);
    case SymbolKind::Helmholtz4: return 4.0 + w2;
    case SymbolKind::Helmholtz1: return 1.0 + w2;
    case SymbolKind::SMultiplier: return (1.0 + w2) / (4.0 + w2);
    case SymbolKind::J: return {0.0, omega * (4.0 + w2) / (1.0 + w2)};
    case SymbolKind::Dx: return {0.0, omega};
  }
  return 0.0;
}

bool symbol_is_odd(SymbolKind kind) { return kind == SymbolKind::J || kind == SymbolKind::Dx; }

namespace {

constexpr std::size_t kPoints = 6;

// Product-integration weights for int_0^1 exp(-a (1 - s)) f(x_i + s h) ds
// with f interpolated on nodes s = start + 0..5; one set per start offset.
struct CellWeights {
  std::array<std::array<double, kPoints>, kPoints> by_start{};  // index: -start
  double decay = 0.0;                                            // exp(-a)
};

CellWeights cell_weights(double a) {
  // Moments m_j = int_0^1 exp(-a (1 - s)) s^j ds.
  std::array<double, kPoints> moments{};
  if (a < 2.0) {
    for (std::size_t j = 0; j < kPoints; ++j) {
      // sum_n (-a)^n j! / (j + n + 1)!
      double term = 1.0 / static_cast<double>(j + 1);
      double sum = term;
      for (std::size_t n = 1; n < 200; ++n) {
        term *= -a / static_cast<double>(j + n + 1);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      moments[j] = sum;
    }
  } else {
    moments[0] = -std::expm1(-a) / a;
    for (std::size_t j = 1; j < kPoints; ++j) {
      moments[j] = (1.0 - static_cast<double>(j) * moments[j - 1]) / a;
    }
  }

  CellWeights out;
  out.decay = std::exp(-a);
  for (std::size_t shift = 0; shift < kPoints; ++shift) {
    const double start = -static_cast<double>(shift);
    Eigen::Matrix<double, kPoints, kPoints> V;
    Eigen::Matrix<double, kPoints, 1> m;
    for (std::size_t j = 0; j < kPoints; ++j) {
      m(static_cast<Eigen::Index>(j)) = moments[j];
      for (std::size_t k = 0; k < kPoints; ++k) {
        V(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            std::pow(start + static_cast<double>(k), static_cast<double>(j));
      }
    }
    const Eigen::Matrix<double, kPoints, 1> w = V.fullPivLu().solve(m);
    for (std::size_t k = 0; k < kPoints; ++k) out.by_start[shift][k] = w(static_cast<Eigen::Index>(k));
  }
  return out;
}

// I_i = int_{-inf}^{x_i} exp(-mu (x_i - s)) f(s) ds.
std::vector<double> left_sweep(std::span<const double> f, double mu, double h,
                               const CellWeights& weights, double tail_rate) {
  const std::size_t n = f.size();
  std::vector<double> out(n);
  out[0] = f[0] / (mu + tail_rate);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t nominal = i >= 2 ? i - 2 : 0;
    const std::size_t start = std::min(nominal, n - kPoints);
    const std::size_t shift = i - start;
    const auto& w = weights.by_start[shift];
    double cell = 0.0;
    for (std::size_t k = 0; k < kPoints; ++k) cell += w[k] * f[start + k];
    out[i + 1] = weights.decay * out[i] + h * cell;
  }
  return out;
}

struct OneSided {
  std::vector<double> left;
  std::vector<double> right;
  double mu;
};

OneSided one_sided_integrals(const LineField& f, double a, std::optional<double> tail_rate) {
  if (!(a > 0.0)) throw ValidationError("Helmholtz parameter must be positive");
  if (!f.decays) {
    throw ValidationError("inverse Helmholtz on the line requires a decaying field");
  }
  const std::size_t n = f.size();
  if (n < kPoints) throw ValidationError("grid too small for the inverse Helmholtz stencil");
  const double h = f.grid.spacing();
  const double mu = std::sqrt(a);
  const CellWeights weights = cell_weights(mu * h);

  const double r_left = tail_rate ? *tail_rate : boundary_decay_rate(f.samples[0], f.samples[1], h);
  const double r_right =
      tail_rate ? *tail_rate : boundary_decay_rate(f.samples[n - 1], f.samples[n - 2], h);

  OneSided out;
  out.mu = mu;
  out.left = left_sweep(f.samples, mu, h, weights, r_left);
  std::vector<double> reversed(f.samples.rbegin(), f.samples.rend());
  auto right = left_sweep(reversed, mu, h, weights, r_right);
  out.right.assign(right.rbegin(), right.rend());
  return out;
}

}  // namespace

LineField inv_helmholtz_line(const LineField& f, double a, std::optional<double> tail_rate) {
  const auto sides = one_sided_integrals(f, a, tail_rate);
  std::vector<double> g(f.size());
  const double scale = 0.5 / sides.mu;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = scale * (sides.left[i] + sides.right[i]);
  return LineField::make(f.grid, std::move(g));
}

LineField inv_helmholtz_line_derivative(const LineField& f, double a) {
  const auto sides = one_sided_integrals(f, a, std::nullopt);
  std::vector<double> g(f.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 0.5 * (sides.right[i] - sides.left[i]);
  return LineField::make(f.grid, std::move(g));
}

LineField line_derivative(const LineField& f) {
  if (!f.decays) throw ValidationError("spectral derivative on the line requires a decaying field");
  const std::size_t n = f.size();
  detail::RealFft fft(n);
  auto spec = fft.forward(f.samples);
  const double length = static_cast<double>(n) * f.grid.spacing();
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double omega = 2.0 * std::numbers::pi * static_cast<double>(j) / length;
    spec[j] *= std::complex<double>(0.0, omega);
  }
  if (n % 2 == 0) spec.back() = 0.0;
  return LineField::make(f.grid, fft.inverse(spec));
}

LineField apply_J_line(const LineField& f) {
  const auto df = line_derivative(f);
  const auto smooth = inv_helmholtz_line_derivative(f, 1.0);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = df.samples[i] + 3.0 * smooth.samples[i];
  return LineField::make(f.grid, std::move(out));
}

PeriodicField apply_periodic(SymbolKind kind, const PeriodicField& f) {
  const std::size_t n = f.size();
  detail::RealFft fft(n);
  auto spec = fft.forward(f.samples);
  for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= symbol(kind, f.grid.wavenumber(j));
  if (symbol_is_odd(kind)) spec.back() = 0.0;
  return PeriodicField::make(f.grid, fft.inverse(spec));
}

LineField apply_Lc(const LineField& v, const SolitonProfile& profile) {
  if (!(v.grid == profile.grid)) throw ValidationError("grid mismatch between field and profile");
  const auto smooth = inv_helmholtz_line(v, 4.0);
  const double c = profile.params.c();
  const double coupling = profile.params.coupling();
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (c - profile.values[i]) * v.samples[i] - coupling * smooth.samples[i];
  }
  return LineField::make(v.grid, std::move(out));
}

PeriodicField apply_Lc(const PeriodicField& v, const PeriodicProfile& profile) {
  if (!(v.grid == profile.grid)) throw ValidationError("grid mismatch between field and profile");
  const auto smooth = apply_periodic(SymbolKind::InvHelmholtz4, v);
  const double c = profile.params.c();
  const double coupling = profile.params.coupling();
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (c - profile.values[i]) * v.samples[i] - coupling * smooth.samples[i];
  }
  return PeriodicField::make(v.grid, std::move(out));
}

}  // namespace dplab
