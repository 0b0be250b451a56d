#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "dplab/errors.hpp"
#include "dplab/evolution.hpp"
#include "dplab/functionals.hpp"
#include "dplab/helmholtz.hpp"
#include "dplab/profile.hpp"
#include "generators.hpp"

using namespace dplab;

namespace {

const WaveParams& params() {
  static const WaveParams p = WaveParams::make(1.0, 0.25);
  return p;
}

const PeriodicProfile& fine() {
  static const PeriodicProfile p = periodize(params(), periodic_grid_for(params(), 0.1));
  return p;
}

const PeriodicProfile& coarse() {
  static const PeriodicProfile p = periodize(params(), periodic_grid_for(params(), 0.3));
  return p;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

PeriodicField plus(const PeriodicField& u, const PeriodicField& v, double scale) {
  auto out = u.samples;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * v[i];
  return PeriodicField::make(u.grid, std::move(out));
}

PeriodicField rolled(const PeriodicField& u, std::size_t shift) {
  auto out = u.samples;
  std::rotate(out.begin(), out.end() - static_cast<std::ptrdiff_t>(shift), out.end());
  return PeriodicField::make(u.grid, std::move(out));
}

}  // namespace

TEST(Rhs, ZeroFieldIsStationary) {
  const auto zero = PeriodicField::make(coarse().grid, std::vector<double>(coarse().grid.size(), 0.0));
  for (double v : dp_rhs(zero, 0.25).samples) EXPECT_EQ(v, 0.0);
  for (double v : dp_rhs_mform(zero, 0.25).samples) EXPECT_EQ(v, 0.0);
}

TEST(Rhs, SolitonTravelsAtSpeedC) {
  const auto& p = fine();
  const auto rhs = dp_rhs(p.field(), params().k());
  const auto d = p.derivative;
  std::vector<double> residual(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) residual[i] = rhs[i] + params().c() * d[i];
  EXPECT_LT(sup_norm(residual), 1e-8 * sup_norm(d));
}

TEST(Rhs, HamiltonianAndMomentumFormsAgree) {
  gen::Rng rng(81);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = gen::trig(coarse().grid, rng, 12);
    const double k = rng.uniform(0.0, 1.0);
    const auto a = dp_rhs(u, k, false);
    const auto b = dp_rhs_mform(u, k);
    EXPECT_LT(max_abs_diff(a.samples, b.samples), 1e-10 * (1.0 + sup_norm(b.samples)));
  }
}

TEST(Rhs, DealiasingOnlyActsOnUnresolvedProducts) {
  gen::Rng rng(82);
  const auto& grid = coarse().grid;
  const auto smooth = gen::trig(grid, rng, grid.size() / 8);
  EXPECT_LT(max_abs_diff(dp_rhs(smooth, 0.3, true).samples, dp_rhs(smooth, 0.3, false).samples),
            1e-11 * (1.0 + sup_norm(dp_rhs(smooth, 0.3, false).samples)));
  const auto rough = random_smooth_field(grid, 5, 0.0, grid.size() / 2);
  EXPECT_GT(max_abs_diff(dp_rhs(rough, 0.3, true).samples, dp_rhs(rough, 0.3, false).samples), 1e-6);
}

TEST(Evolve, TimeReversal) {
  const auto& p = coarse();
  const auto u0 = plus(p.field(), random_smooth_field(p.grid, 3), 1e-2);
  EvolutionConfig forward;
  forward.dt = 0.05;
  forward.T = 5.0;
  const auto there = evolve(u0, params().k(), forward);
  auto backward = forward;
  backward.dt = -0.05;
  const auto back = evolve(there.final_state, params().k(), backward);
  EXPECT_DOUBLE_EQ(back.t_final, -5.0);
  EXPECT_LT(max_abs_diff(back.final_state.samples, u0.samples), 1e-8);
}

TEST(Evolve, FourthOrderInTime) {
  const auto& p = coarse();
  const auto u0 = plus(p.field(), random_smooth_field(p.grid, 4), 5e-2);
  auto run = [&](double dt) {
    EvolutionConfig config;
    config.dt = dt;
    config.T = 1.6;
    return evolve(u0, params().k(), config).final_state.samples;
  };
  const auto a = run(0.16);
  const auto b = run(0.08);
  const auto c = run(0.04);
  const double ratio = max_abs_diff(a, b) / max_abs_diff(b, c);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(Evolve, IntegratingFactorMatchesPlainStepping) {
  const auto& p = coarse();
  EvolutionConfig config;
  config.dt = 0.05;
  config.T = 2.0;
  const auto plain = evolve(p.field(), params().k(), config);
  config.integrating_factor = true;
  const auto factor = evolve(p.field(), params().k(), config);
  EXPECT_LT(max_abs_diff(plain.final_state.samples, factor.final_state.samples), 1e-5);
}

TEST(Evolve, SolitonIsTranslatedAndConserved) {
  const auto& p = coarse();
  EvolutionConfig config;
  config.dt = 0.05;
  config.T = 10.0;
  const auto r = evolve(p.field(), params().k(), config);
  EXPECT_FALSE(r.halted);
  EXPECT_EQ(r.steps, 200u);
  const auto d = orbit_distance(r.final_state, p.field());
  EXPECT_LT(d.distance, 1e-6);
  EXPECT_NEAR(std::abs(d.shift), 10.0, 1e-4);
  EXPECT_LT(std::max({r.max_drift.M, r.max_drift.H, r.max_drift.S}), 1e-7);
}

TEST(Evolve, SmallPerturbationsStayClose) {
  const auto& p = coarse();
  for (std::uint64_t seed : {1u, 2u}) {
    const double eps = 1e-3;
    const auto u0 = plus(p.field(), random_smooth_field(p.grid, seed), eps);
    const double start = orbit_distance(u0, p.field()).distance;
    double worst = 0.0;
    EvolutionConfig config;
    config.dt = 0.05;
    config.T = 100.0;
    config.snapshot_stride = 20;
    const auto r = evolve(u0, params().k(), config, [&](const Snapshot& s) {
      worst = std::max(worst, orbit_distance(s.u, p.field()).distance);
    });
    EXPECT_FALSE(r.halted);
    EXPECT_LE(worst, 10.0 * start) << "seed " << seed;
  }
}

TEST(Evolve, ConservedSeriesIsStrided) {
  const auto& p = coarse();
  EvolutionConfig config;
  config.dt = 0.1;
  config.T = 1.0;
  config.series_stride = 3;
  const auto r = evolve(p.field(), params().k(), config);
  std::vector<double> times;
  for (const auto& s : r.series) times.push_back(s.t);
  ASSERT_EQ(times.size(), 5u);
  EXPECT_EQ(times[0], 0.0);
  EXPECT_NEAR(times[1], 0.3, 1e-12);
  EXPECT_NEAR(times[4], 1.0, 1e-12);
}

TEST(Evolve, RejectsBadSteps) {
  const auto& p = coarse();
  EvolutionConfig config;
  config.dt = 10.0;
  config.T = 10.0;
  EXPECT_THROW(evolve(p.field(), params().k(), config), ValidationError);
  config.dt = 0.3;
  config.T = 1.0;
  EXPECT_THROW(evolve(p.field(), params().k(), config), ValidationError);
  config.dt = 0.0;
  EXPECT_THROW(evolve(p.field(), params().k(), config), ValidationError);
}

TEST(Evolve, HaltsOnDrift) {
  const auto& p = coarse();
  EvolutionConfig config;
  config.dt = 0.1;
  config.T = 5.0;
  config.drift_halt = 1e-300;
  const auto r = evolve(plus(p.field(), random_smooth_field(p.grid, 9), 0.2), params().k(), config);
  EXPECT_TRUE(r.halted);
  EXPECT_NE(r.halt_reason.find("drift"), std::string::npos);
  EXPECT_LT(r.steps, 50u);
  EXPECT_EQ(r.series.back().t, r.t_final);
}

TEST(Evolve, SnapshotStride) {
  const auto& p = coarse();
  EvolutionConfig config;
  config.dt = 0.1;
  config.T = 1.0;
  config.snapshot_stride = 5;
  std::vector<double> times;
  evolve(p.field(), params().k(), config, [&](const Snapshot& s) { times.push_back(s.t); });
  ASSERT_EQ(times.size(), 3u);
  EXPECT_NEAR(times[2], 1.0, 1e-12);
}

TEST(Linearized, TranslationModeIsInTheKernel) {
  const auto& p = fine();
  const auto d = p.derivative_field();
  EXPECT_LT(periodic_norm(linearized_rhs(d, p)), 1e-8 * periodic_norm(d));
}

TEST(Linearized, SpeedDerivativeMapsToTranslation) {
  const auto& p = fine();
  const auto dc = periodic_dphi_dc(params(), p.grid);
  const auto image = linearized_rhs(dc, p);
  const auto d = p.derivative_field();
  const double cosine = std::abs(periodic_inner(image, d)) / (periodic_norm(image) * periodic_norm(d));
  EXPECT_GT(cosine, 1.0 - 1e-6);
  EXPECT_NEAR(periodic_norm(image), periodic_norm(d), 1e-4 * periodic_norm(d));
}

TEST(Linearized, QuadraticEnergyIsConserved) {
  const auto& p = coarse();
  const auto v0 = random_smooth_field(p.grid, 11);
  const auto run = evolve_linearized(v0, p, 0.02, 5.0);
  const double e0 = periodic_inner(apply_Lc(v0, p), v0);
  const double e1 = periodic_inner(apply_Lc(run.final_state, p), run.final_state);
  EXPECT_NEAR(e1, e0, 1e-6 * std::abs(e0));
}

TEST(Linearized, RejectsUnstableStep) {
  EXPECT_THROW(evolve_linearized(coarse().field(), coarse(), 10.0, 10.0), ValidationError);
}

TEST(GrowthFit, RecoversSyntheticRate) {
  std::vector<double> t, v;
  for (int i = 0; i <= 50; ++i) {
    t.push_back(0.1 * i);
    v.push_back(2.0 * std::exp(0.3 * t.back()));
  }
  const auto fit = growth_rate_fit(t, v);
  EXPECT_NEAR(fit.sigma, 0.3, 1e-12);
  EXPECT_LT(fit.std_error, 1e-10);
  EXPECT_EQ(fit.samples, 51u);
  EXPECT_LE(fit.lower, fit.sigma);
  EXPECT_GE(fit.upper, fit.sigma);
}

TEST(GrowthFit, RejectsDegenerateInput) {
  EXPECT_THROW(growth_rate_fit({0.0, 1.0}, {1.0, 1.0}), ValidationError);
  EXPECT_THROW(growth_rate_fit({0.0, 1.0, 2.0}, {1.0, 0.0, 1.0}), NumericalError);
  EXPECT_THROW(growth_rate_fit({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}), ValidationError);
}

TEST(GrowthFit, TranslationModeDoesNotGrow) {
  const auto& p = coarse();
  const auto run = evolve_linearized(p.derivative_field(), p, 0.02, 10.0);
  EXPECT_LT(std::abs(growth_rate_fit(run.times, run.norms).sigma), 1e-6);
}

TEST(GrowthFit, GeneralizedKernelProjection) {
  const auto& p = fine();
  const auto dc = periodic_dphi_dc(params(), p.grid);
  const auto v = project_generalized_kernel(random_smooth_field(p.grid, 12), p, dc);
  // The projected field has no component along the functional gradient,
  // which is proportional to (4 - d^2)^{-1}-weighted phi.
  const auto again = project_generalized_kernel(v, p, dc);
  EXPECT_LT(max_abs_diff(v.samples, again.samples), 1e-12);
  const auto only_dc = project_generalized_kernel(dc, p, dc);
  EXPECT_LT(periodic_norm(only_dc), 1e-10 * periodic_norm(dc));
}

TEST(GrowthProbe, BoundedOnTheReferenceWave) {
  const auto& p = coarse();
  const auto dc = periodic_dphi_dc(params(), p.grid);
  const auto probe = linearized_growth_probe(p, dc, 1, 0.02, 20.0);
  EXPECT_EQ(probe.seed, 1u);
  EXPECT_LT(probe.fit.sigma, 0.05);
}

TEST(JlcSpectrum, HamiltonianSymmetryAndKernel) {
  const auto s = jlc_matrix_spectrum(coarse());
  EXPECT_EQ(s.n, coarse().grid.size());
  EXPECT_LT(s.hamiltonian_defect, 1e-8);
  EXPECT_GE(s.kernel_dimension, 1u);
  EXPECT_GT(s.kernel_overlap, 1.0 - 1e-6);
  EXPECT_LT(s.max_real_part, 1e-3 * s.spectral_radius);
}

TEST(JlcSpectrum, ResolutionTrendIsBounded) {
  const double period = coarse().grid.period();
  const auto trend = jlc_resolution_trend(params(), period, {128, 256});
  ASSERT_EQ(trend.size(), 2u);
  for (double v : trend) EXPECT_LT(std::abs(v), 0.05);
}

TEST(OrbitDistance, RecoversAGridShift) {
  const auto& p = coarse();
  const auto u = p.field();
  for (std::size_t j : {1u, 7u, 40u}) {
    const auto d = orbit_distance(rolled(u, j), u);
    EXPECT_LT(d.distance, 1e-8) << j;
    EXPECT_NEAR(std::abs(d.shift), static_cast<double>(j) * p.grid.spacing(), 1e-8) << j;
  }
  EXPECT_NEAR(orbit_distance(u, u).distance, 0.0, 1e-12);
}

TEST(OrbitDistance, RejectsMismatchedGrids) {
  EXPECT_THROW(orbit_distance(coarse().field(), fine().field()), ValidationError);
}

TEST(RandomField, DeterministicNormalizedZeroMean) {
  const PeriodicGrid grid(50.0, 256);
  const auto a = random_smooth_field(grid, 17);
  const auto b = random_smooth_field(grid, 17);
  const auto c = random_smooth_field(grid, 18);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, c.samples);
  EXPECT_NEAR(periodic_norm(a), 1.0, 1e-12);
  EXPECT_NEAR(periodic_integral(a), 0.0, 1e-12);
}
