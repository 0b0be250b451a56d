#include "dplab/fields.hpp"

#include <algorithm>
#include <cmath>

#include "dplab/errors.hpp"

namespace dplab {

double sup_norm(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

LineField LineField::make(const SymmetricGrid& grid, std::vector<double> samples, double tail_tol) {
  if (samples.size() != grid.size()) throw ValidationError("line field size does not match its grid");
  for (double v : samples) {
    if (!std::isfinite(v)) throw ValidationError("line field has non-finite samples");
  }
  const double scale = sup_norm(samples);
  const double boundary = std::max(std::abs(samples.front()), std::abs(samples.back()));
  const bool decays = boundary <= tail_tol * scale;
  return LineField{grid, std::move(samples), decays};
}

PeriodicField PeriodicField::make(const PeriodicGrid& grid, std::vector<double> samples) {
  if (samples.size() != grid.size()) throw ValidationError("periodic field size does not match its grid");
  for (double v : samples) {
    if (!std::isfinite(v)) throw ValidationError("periodic field has non-finite samples");
  }
  return PeriodicField{grid, std::move(samples)};
}

}  // namespace dplab

namespace dplab {

double boundary_decay_rate(double outer, double inner, double spacing) {
  if (outer == 0.0 || inner == 0.0 || (outer > 0.0) != (inner > 0.0)) return 0.0;
  const double ratio = inner / outer;
  if (!(ratio > 1.0)) return 0.0;
  return std::log(ratio) / spacing;
}

double line_integral(const LineField& f) {
  if (!f.decays) throw ValidationError("line integral of a non-decaying field");
  const std::size_t n = f.size();
  const double h = f.grid.spacing();
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) sum += f.samples[i];
  sum += 0.5 * (f.samples.front() + f.samples.back());
  double total = h * sum;
  const double r_left = boundary_decay_rate(f.samples[0], f.samples[1], h);
  const double r_right = boundary_decay_rate(f.samples[n - 1], f.samples[n - 2], h);
  if (r_left > 0.0) total += f.samples[0] / r_left;
  if (r_right > 0.0) total += f.samples[n - 1] / r_right;
  return total;
}

double line_inner(const LineField& u, const LineField& v) {
  if (!(u.grid == v.grid)) throw ValidationError("grid mismatch");
  std::vector<double> prod(u.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = u.samples[i] * v.samples[i];
  LineField f{u.grid, std::move(prod), u.decays && v.decays};
  return line_integral(f);
}

double line_norm(const LineField& u) { return std::sqrt(std::max(line_inner(u, u), 0.0)); }

double periodic_integral(const PeriodicField& f) {
  double sum = 0.0;
  for (double v : f.samples) sum += v;
  return sum * f.grid.spacing();
}

double periodic_inner(const PeriodicField& u, const PeriodicField& v) {
  if (!(u.grid == v.grid)) throw ValidationError("grid mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += u.samples[i] * v.samples[i];
  return sum * u.grid.spacing();
}

double periodic_norm(const PeriodicField& u) { return std::sqrt(periodic_inner(u, u)); }

}  // namespace dplab
