#pragma once
// Seeded generators for property tests. Every case is reproducible from its
// seed, which the assertions report on failure.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dplab/fields.hpp"
#include "dplab/grid.hpp"
#include "dplab/params.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>()(engine_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

 private:
  std::mt19937_64 engine_;
};

/// c in [0.5, 5] and k strictly inside (0, c/2), kept away from both ends.
inline dplab::WaveParams wave_params(Rng& rng) {
  const double c = rng.uniform(0.5, 5.0);
  const double k = c * rng.uniform(0.04, 0.45);
  return dplab::WaveParams::make(c, k);
}

/// Sum of three Gaussians with random centres, widths and signs, well inside
/// the grid so the field decays at the boundary.
inline dplab::LineField bumps(const dplab::SymmetricGrid& grid, Rng& rng) {
  const double L = grid.half_width();
  double centre[3], width[3], amp[3];
  for (int j = 0; j < 3; ++j) {
    centre[j] = rng.uniform(-0.2 * L, 0.2 * L);
    width[j] = rng.uniform(0.5, 2.5);
    amp[j] = rng.normal();
  }
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid.point(i);
    for (int j = 0; j < 3; ++j) {
      const double s = (x - centre[j]) / width[j];
      v[i] += amp[j] * std::exp(-s * s);
    }
  }
  return dplab::LineField::make(grid, std::move(v));
}

/// Random trigonometric polynomial over modes 0..max_mode with decaying
/// amplitudes.
inline dplab::PeriodicField trig(const dplab::PeriodicGrid& grid, Rng& rng, std::size_t max_mode) {
  std::vector<double> v(grid.size(), 0.0);
  for (std::size_t m = 0; m <= max_mode; ++m) {
    const double a = rng.normal() / (1.0 + m);
    const double b = m == 0 ? 0.0 : rng.normal() / (1.0 + m);
    const double w = grid.wavenumber(m);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double x = grid.point(i);
      v[i] += a * std::cos(w * x) + b * std::sin(w * x);
    }
  }
  return dplab::PeriodicField::make(grid, std::move(v));
}

}  // namespace gen
