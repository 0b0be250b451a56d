#include "fft.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>

#include <fftw3.h>

namespace dplab::detail {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> allocate(std::size_t count) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1))));
}

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct RealFft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

RealFft::RealFft(std::size_t n) : n_(n) {
  static std::map<std::size_t, std::weak_ptr<const Plans>> cache;
  std::lock_guard lock(planner_mutex());
  if (auto cached = cache[n].lock()) {
    plans_ = std::move(cached);
    return;
  }
  auto real = allocate<double>(n);
  auto spec = allocate<fftw_complex>(n / 2 + 1);
  auto plans = std::make_shared<Plans>();
  const int len = static_cast<int>(n);
  plans->forward = fftw_plan_dft_r2c_1d(len, real.get(), spec.get(), FFTW_ESTIMATE);
  plans->backward = fftw_plan_dft_c2r_1d(len, spec.get(), real.get(), FFTW_ESTIMATE);
  cache[n] = plans;
  plans_ = std::move(plans);
}

std::vector<std::complex<double>> RealFft::forward(std::span<const double> x) const {
  auto real = allocate<double>(n_);
  auto spec = allocate<fftw_complex>(spectrum_size());
  std::copy(x.begin(), x.end(), real.get());
  fftw_execute_dft_r2c(plans_->forward, real.get(), spec.get());
  std::vector<std::complex<double>> out(spectrum_size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = {spec[j][0], spec[j][1]};
  return out;
}

std::vector<double> RealFft::inverse(std::span<const std::complex<double>> X) const {
  auto real = allocate<double>(n_);
  auto spec = allocate<fftw_complex>(spectrum_size());
  for (std::size_t j = 0; j < spectrum_size(); ++j) {
    spec[j][0] = X[j].real();
    spec[j][1] = X[j].imag();
  }
  // c2r destroys its input; spec is a scratch copy.
  fftw_execute_dft_c2r(plans_->backward, spec.get(), real.get());
  const double scale = 1.0 / static_cast<double>(n_);
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = real[i] * scale;
  return out;
}

}  // namespace dplab::detail
