#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dplab/grid.hpp"

namespace dplab {

/// Samples of a function on the line, restricted to a symmetric grid.
/// `decays` records whether both boundary samples are below the tail
/// tolerance relative to the sup-norm of the field.
struct LineField {
  SymmetricGrid grid;
  std::vector<double> samples;
  bool decays = false;

  static LineField make(const SymmetricGrid& grid, std::vector<double> samples,
                        double tail_tol = 1e-8);

  std::size_t size() const { return samples.size(); }
  double operator[](std::size_t i) const { return samples[i]; }
};

/// n equispaced samples of a P-periodic function; n is a power of two.
struct PeriodicField {
  PeriodicGrid grid;
  std::vector<double> samples;

  static PeriodicField make(const PeriodicGrid& grid, std::vector<double> samples);

  double period() const { return grid.period(); }
  std::size_t size() const { return samples.size(); }
  double operator[](std::size_t i) const { return samples[i]; }
};

double sup_norm(std::span<const double> values);

}  // namespace dplab

namespace dplab {

/// Trapezoid rule on the grid plus the exact integral of an exponential tail
/// continued from each boundary pair of samples. Requires a decaying field.
double line_integral(const LineField& f);
double line_inner(const LineField& u, const LineField& v);
double line_norm(const LineField& u);

/// Rectangle rule on the circle (spectrally accurate for smooth fields).
double periodic_integral(const PeriodicField& f);
double periodic_inner(const PeriodicField& u, const PeriodicField& v);
double periodic_norm(const PeriodicField& u);

/// Decay rate r >= 0 of the exponential through the two outermost samples
/// (0 if they do not decrease outwards).
double boundary_decay_rate(double outer, double inner, double spacing);

}  // namespace dplab
