#include "dplab/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dplab/errors.hpp"
#include "dplab/params.hpp"

namespace dplab {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

SymmetricGrid::SymmetricGrid(double half_width, std::size_t n) : half_width_(half_width), n_(n) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ValidationError("grid half-width must be positive and finite");
  }
  if (n < 3 || n % 2 == 0) {
    std::ostringstream msg;
    msg << "grid size must be odd and >= 3 (n=" << n << ")";
    throw ValidationError(msg.str());
  }
  spacing_ = 2.0 * half_width / static_cast<double>(n - 1);
}

SymmetricGrid SymmetricGrid::for_params(const WaveParams& params, double tail_tol, std::size_t n) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw ValidationError("tail tolerance must lie in (0,1)");
  const double L = std::log(1.0 / tail_tol) / params.tail_rate();
  return SymmetricGrid(L, n);
}

double SymmetricGrid::point(std::size_t i) const {
  const auto offset = static_cast<double>(static_cast<long long>(i) - static_cast<long long>(center()));
  return offset * spacing_;
}

std::vector<double> SymmetricGrid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = point(i);
  return xs;
}

PeriodicGrid::PeriodicGrid(double period, std::size_t n) : period_(period), n_(n) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ValidationError("period must be positive and finite");
  }
  if (!is_power_of_two(n) || n < 4) {
    std::ostringstream msg;
    msg << "periodic sample count must be a power of two >= 4 (n=" << n << ")";
    throw ValidationError(msg.str());
  }
}

double PeriodicGrid::point(std::size_t j) const {
  const auto offset = static_cast<double>(static_cast<long long>(j) - static_cast<long long>(n_ / 2));
  return offset * spacing();
}

std::vector<double> PeriodicGrid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t j = 0; j < n_; ++j) xs[j] = point(j);
  return xs;
}

double PeriodicGrid::wavenumber(std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / period_;
}

}  // namespace dplab
