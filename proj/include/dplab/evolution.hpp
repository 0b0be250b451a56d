#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dplab/fields.hpp"
#include "dplab/functionals.hpp"
#include "dplab/params.hpp"
#include "dplab/profile.hpp"

namespace dplab {

// Full flow on the circle:
//   u_t = -d (4 - d^2)(1 - d^2)^{-1} (u^2 / 2) - 2k d (1 - d^2)^{-1} u.

/// With `dealias` the product u^2 is truncated to the lower two thirds of the
/// spectrum before the multipliers are applied.
PeriodicField dp_rhs(const PeriodicField& u, double k, bool dealias = true);

/// The same flow from m_t = -2k u_x - 3 m u_x - u m_x, m = u - u_xx, with
/// pointwise products and (1 - d^2)^{-1} applied last.
PeriodicField dp_rhs_mform(const PeriodicField& u, double k);

struct EvolutionConfig {
  double dt = 1e-2;          // negative steps backward in time
  double T = 1.0;            // duration, an integer multiple of |dt|
  double cfl = 0.5;          // requires |dt| <= cfl * h / max|u0|
  bool integrating_factor = false;
  bool dealias = true;
  std::size_t series_stride = 1;    // conserved-series sampling, in steps
  std::size_t snapshot_stride = 0;  // 0 disables snapshots
  double blowup_factor = 1e3;       // halt once max|u| exceeds this multiple of max|u0|
  double drift_halt = 1e-2;         // halt once a conserved quantity drifts this far
};

struct ConservedSample {
  double t;
  ConservedTriple values;
};

struct Snapshot {
  double t;
  PeriodicField u;
};

struct EvolutionResult {
  PeriodicField final_state;
  double t_final = 0.0;
  std::size_t steps = 0;
  std::vector<ConservedSample> series;
  ConservedTriple max_drift;  // max over steps of |Q(t) - Q(0)| / |Q(0)|
  double cfl_number = 0.0;    // |dt| max|u0| / h
  bool halted = false;
  std::string halt_reason;
};

using SnapshotSink = std::function<void(const Snapshot&)>;

/// Classical RK4 at fixed step. The conserved triple is evaluated after every
/// step. Throws ValidationError when the CFL bound or the dt/T pairing is
/// violated; a blow-up halts the run and returns the partial result.
EvolutionResult evolve(const PeriodicField& u0, double k, const EvolutionConfig& config,
                       const SnapshotSink& sink = {});

/// Minimum over shifts s of ||u - ref(. - s)||, with s located by the
/// correlation peak, refined quadratically, then by Newton on the spectral
/// correlation.
struct OrbitDistance {
  double distance = 0.0;
  double shift = 0.0;
};

OrbitDistance orbit_distance(const PeriodicField& u, const PeriodicField& reference);

/// v_t = J L_c v about the periodized profile.
PeriodicField linearized_rhs(const PeriodicField& v, const PeriodicProfile& profile);

struct LinearizedRun {
  std::vector<double> times;
  std::vector<double> norms;
  PeriodicField final_state;
};

LinearizedRun evolve_linearized(const PeriodicField& v0, const PeriodicProfile& profile, double dt,
                                double T, std::size_t record_stride = 10);

struct GrowthFit {
  double sigma = 0.0;
  double std_error = 0.0;
  double lower = 0.0;  // sigma -+ 2 std_error
  double upper = 0.0;
  std::size_t samples = 0;
};

/// Least-squares slope of log ||v(t)||. Throws NumericalError when the norm
/// collapses or is not finite.
GrowthFit growth_rate_fit(const std::vector<double>& times, const std::vector<double>& norms);

/// d phi / d c on the circle by a central difference of periodized profiles.
PeriodicField periodic_dphi_dc(const WaveParams& params, const PeriodicGrid& grid,
                               double delta_c = 0.0);

/// Removes the d_c phi component that seeds secular growth along the
/// generalized kernel: v - <dS/du(phi), v> / <dS/du(phi), d_c phi> d_c phi.
PeriodicField project_generalized_kernel(const PeriodicField& v, const PeriodicProfile& profile,
                                         const PeriodicField& dphi_dc);

/// Zero-mean random field sum_m e^{-decay m}(a_m cos + b_m sin) over modes
/// 1 <= m < max_mode (0 selects n/8), with standard normal a_m, b_m drawn
/// from a seeded mt19937_64, scaled to unit L2 norm.
PeriodicField random_smooth_field(const PeriodicGrid& grid, std::uint64_t seed, double decay = 0.2,
                                  std::size_t max_mode = 0);

/// Growth rate of the linearized flow from a seeded random start with the
/// generalized-kernel component removed.
struct GrowthProbe {
  std::uint64_t seed = 0;
  GrowthFit fit;
};
GrowthProbe linearized_growth_probe(const PeriodicProfile& profile, const PeriodicField& dphi_dc,
                                    std::uint64_t seed, double dt, double T);

struct JlcSpectrum {
  std::vector<std::complex<double>> eigenvalues;
  double max_real_part = 0.0;
  double spectral_radius = 0.0;
  double hamiltonian_defect = 0.0;  // max distance to the mirrored set, over the spectral radius
  std::size_t kernel_dimension = 0; // eigenvalues with |lambda| <= 1e-6 spectral radius
  double kernel_overlap = 0.0;      // cosine between d_xi phi and that eigenspace
  std::vector<double> growing_mode; // real part of the eigenvector with largest real part
  std::size_t n = 0;
};

JlcSpectrum jlc_matrix_spectrum(const PeriodicProfile& profile);

/// Max real part of the JL_c matrix spectrum on successively finer grids of
/// the same period.
std::vector<double> jlc_resolution_trend(const WaveParams& params, double period,
                                         const std::vector<std::size_t>& sizes);

}  // namespace dplab
