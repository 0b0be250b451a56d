#include "matrices.hpp"

#include "fft.hpp"

namespace dplab::detail {

Eigen::MatrixXd multiplier_matrix(SymbolKind kind, const PeriodicGrid& grid) {
  const std::size_t n = grid.size();
  RealFft fft(n);
  std::vector<std::complex<double>> spec(n / 2 + 1);
  for (std::size_t j = 0; j < spec.size(); ++j) spec[j] = symbol(kind, grid.wavenumber(j));
  if (symbol_is_odd(kind)) spec.back() = 0.0;
  const std::vector<double> column = fft.inverse(spec);

  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      m(i, j) = column[static_cast<std::size_t>((i - j + size) % size)];
    }
  }
  return m;
}

Eigen::MatrixXd lc_matrix(const PeriodicProfile& profile) {
  Eigen::MatrixXd m =
      -profile.params.coupling() * multiplier_matrix(SymbolKind::InvHelmholtz4, profile.grid);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m(i, i) += profile.params.c() - profile.values[static_cast<std::size_t>(i)];
  }
  return m;
}

}  // namespace dplab::detail
