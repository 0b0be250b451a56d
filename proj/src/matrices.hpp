#pragma once

// Dense Fourier-collocation matrices of circulant multipliers.

#include <Eigen/Dense>

#include "dplab/helmholtz.hpp"
#include "dplab/profile.hpp"

namespace dplab::detail {

/// Matrix of v -> IFFT(symbol . FFT(v)) on the given grid.
Eigen::MatrixXd multiplier_matrix(SymbolKind kind, const PeriodicGrid& grid);

/// (c - phi) v - (3c + 2k)(4 - d^2)^{-1} v.
Eigen::MatrixXd lc_matrix(const PeriodicProfile& profile);

}  // namespace dplab::detail
