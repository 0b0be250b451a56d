#pragma once

// Real-to-complex transforms of a fixed length backed by FFTW. Plans are
// created once per length under a lock and shared; execution uses the
// new-array interface on per-call buffers, so a RealFft is reentrant.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace dplab::detail {

class RealFft {
 public:
  explicit RealFft(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t spectrum_size() const { return n_ / 2 + 1; }

  /// Unnormalized forward transform.
  std::vector<std::complex<double>> forward(std::span<const double> x) const;
  /// Inverse transform including the 1/n normalization.
  std::vector<double> inverse(std::span<const std::complex<double>> X) const;

 private:
  struct Plans;
  std::size_t n_;
  std::shared_ptr<const Plans> plans_;
};

}  // namespace dplab::detail
