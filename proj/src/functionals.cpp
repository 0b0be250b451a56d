#include "dplab/functionals.hpp"

#include <cmath>

#include "dplab/errors.hpp"
#include "dplab/helmholtz.hpp"
#include "dplab/profile.hpp"

namespace dplab {

namespace {

LineField pointwise(const LineField& like, std::vector<double> values) {
  return LineField::make(like.grid, std::move(values));
}

}  // namespace

double momentum_M(const LineField& u) { return line_integral(u); }

double momentum_M(const PeriodicField& u) { return periodic_integral(u); }

double hamiltonian_H(const LineField& u, double k) {
  const auto w = inv_helmholtz_line(u, 4.0);
  std::vector<double> density(u.size());
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double v = u.samples[i];
    density[i] = -(v * v * v + 6.0 * k * v * w.samples[i]) / 6.0;
  }
  return line_integral(pointwise(u, std::move(density)));
}

double hamiltonian_H(const PeriodicField& u, double k) {
  const auto w = apply_periodic(SymbolKind::InvHelmholtz4, u);
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = u.samples[i];
    sum += v * v * v + 6.0 * k * v * w.samples[i];
  }
  return -sum * u.grid.spacing() / 6.0;
}

double functional_S(const LineField& u) {
  // (1 - d^2)(4 - d^2)^{-1} = 1 - 3 (4 - d^2)^{-1}
  const auto w = inv_helmholtz_line(u, 4.0);
  std::vector<double> density(u.size());
  for (std::size_t i = 0; i < density.size(); ++i) {
    density[i] = 0.5 * u.samples[i] * (u.samples[i] - 3.0 * w.samples[i]);
  }
  return line_integral(pointwise(u, std::move(density)));
}

double functional_S(const PeriodicField& u) {
  return 0.5 * periodic_inner(apply_periodic(SymbolKind::SMultiplier, u), u);
}

ConservedTriple conserved(const LineField& u, double k) {
  return {momentum_M(u), hamiltonian_H(u, k), functional_S(u)};
}

ConservedTriple conserved(const PeriodicField& u, double k) {
  return {momentum_M(u), hamiltonian_H(u, k), functional_S(u)};
}

double lagrangian_Q(const LineField& u, const WaveParams& params) {
  return hamiltonian_H(u, params.k()) + params.c() * functional_S(u);
}

double S_quadrature_reduced(const SolitonProfile& profile) {
  const double c = profile.params.c();
  const double k = profile.params.k();
  const std::size_t mid = profile.grid.center();
  const double h = profile.grid.spacing();
  auto density = [&](double phi) { return (3.0 * phi + 4.0 * k) * phi * phi; };

  // Trapezoid over [-L, 0] plus the tail beyond -L, which decays like
  // exp(2 nu xi).
  double sum = 0.5 * (density(profile.values[0]) + density(profile.values[mid]));
  for (std::size_t i = 1; i < mid; ++i) sum += density(profile.values[i]);
  const double tail = density(profile.values[0]) / (2.0 * profile.tail_rate);
  return (h * sum + tail) / (2.0 * (3.0 * c + 2.0 * k));
}

ReducedIdentityDefects reduced_identity_defects(const SolitonProfile& profile) {
  const double c = profile.params.c();
  const double k = profile.params.k();
  const auto w = inv_helmholtz_line(profile.field(), 4.0);
  ReducedIdentityDefects out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double phi = profile.values[i];
    const double wi = w.samples[i];
    out.stationarity = std::max(out.stationarity,
                                std::abs(c * (phi - 3.0 * wi) - (0.5 * phi * phi + 2.0 * k * wi)));
    out.elimination = std::max(
        out.elimination,
        std::abs((phi - 3.0 * wi) - (3.0 * phi + 4.0 * k) * phi / (2.0 * (3.0 * c + 2.0 * k))));
  }
  return out;
}

double S_closed_form(double c, double k) {
  if (!(k > 0.0) || !(c >= 2.0 * k)) throw ValidationError("S closed form requires c >= 2k > 0");
  const double beta = c * (c - 2.0 * k);
  const double alpha_minus = std::sqrt(2.0 / 3.0 * k * c + 4.0 / 9.0 * k * k);
  const double root = std::sqrt(beta);
  // log((alpha_+ + sqrt(beta)) / alpha_-) with alpha_+^2 = beta + alpha_-^2 is
  // asinh(sqrt(beta)/alpha_-), which stays accurate as beta -> 0.
  const double log_term = std::asinh(root / alpha_minus);
  return (c * c - c * k - 2.0 / 3.0 * k * k) * root / (2.0 * (3.0 * c + 2.0 * k)) -
         k * k / 9.0 * log_term;
}

double dSdc_closed_form(double c, double k) {
  if (!(k > 0.0) || !(c >= 2.0 * k)) throw ValidationError("dS/dc closed form requires c >= 2k > 0");
  const double denom = 3.0 * c + 2.0 * k;
  return 3.0 * c * c * (c + k) / (denom * denom) * std::sqrt((c - 2.0 * k) / c);
}

double traveling_residual(const LineField& phi, const WaveParams& params) {
  const double c = params.c();
  const double k = params.k();
  const auto w = inv_helmholtz_line(phi, 4.0);
  std::vector<double> r(phi.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double p = phi.samples[i];
    r[i] = -(0.5 * p * p + 2.0 * k * w.samples[i]) + c * (p - 3.0 * w.samples[i]);
  }
  return line_norm(LineField{phi.grid, std::move(r), true});
}

double traveling_residual(const SolitonProfile& profile) {
  return traveling_residual(profile.field(), profile.params);
}

}  // namespace dplab
