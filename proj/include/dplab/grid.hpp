#pragma once

#include <cstddef>
#include <vector>

namespace dplab {

class WaveParams;

/// Odd number of equispaced points on [-L, L]; the middle point is exactly 0.
class SymmetricGrid {
 public:
  SymmetricGrid(double half_width, std::size_t n);

  /// L such that exp(-nu L) < tail_tol, with the default resolution n = 4097.
  static SymmetricGrid for_params(const WaveParams& params, double tail_tol = 1e-12,
                                  std::size_t n = 4097);

  double half_width() const { return half_width_; }
  std::size_t size() const { return n_; }
  std::size_t center() const { return (n_ - 1) / 2; }
  double spacing() const { return spacing_; }

  /// xi_i = -L + i h, computed from the center outwards so the grid is
  /// exactly antisymmetric: point(i) == -point(n-1-i).
  double point(std::size_t i) const;
  std::vector<double> points() const;

  bool operator==(const SymmetricGrid& other) const {
    return n_ == other.n_ && half_width_ == other.half_width_;
  }

 private:
  double half_width_;
  std::size_t n_;
  double spacing_;
};

/// n (power of two) equispaced points x_j = -P/2 + j P/n on a circle of length P.
class PeriodicGrid {
 public:
  PeriodicGrid(double period, std::size_t n);

  double period() const { return period_; }
  std::size_t size() const { return n_; }
  double spacing() const { return period_ / static_cast<double>(n_); }
  double point(std::size_t j) const;
  std::vector<double> points() const;
  /// Angular wavenumber of DFT bin j in [0, n/2].
  double wavenumber(std::size_t j) const;

  bool operator==(const PeriodicGrid& other) const {
    return n_ == other.n_ && period_ == other.period_;
  }

 private:
  double period_;
  std::size_t n_;
};

bool is_power_of_two(std::size_t n);

}  // namespace dplab
