#include "usonic/fft.hpp"

#include <algorithm>
#include <mutex>
#include <new>

namespace usonic {
namespace {

// FFTW's planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft::RealFft(std::size_t size) : size_(size) {
  in_ = static_cast<double*>(fftw_malloc(sizeof(double) * size_));
  out_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins()));
  if (in_ == nullptr || out_ == nullptr) {
    fftw_free(in_);
    fftw_free(out_);
    throw std::bad_alloc();
  }
  std::lock_guard lock(planner_mutex());
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(size_), in_, out_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  fftw_free(in_);
  fftw_free(out_);
}

std::span<const std::complex<double>> RealFft::forward(std::span<const double> input) {
  const std::size_t n = std::min(input.size(), size_);
  std::copy_n(input.begin(), n, in_);
  std::fill(in_ + n, in_ + size_, 0.0);
  fftw_execute(plan_);
  // fftw_complex is layout-compatible with std::complex<double>.
  return {reinterpret_cast<const std::complex<double>*>(out_), bins()};
}

std::vector<double> inverse_real_fft(std::span<const std::complex<double>> spectrum,
                                     std::size_t size) {
  const std::size_t bins = size / 2 + 1;
  auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins));
  auto* out = static_cast<double*>(fftw_malloc(sizeof(double) * size));
  if (in == nullptr || out == nullptr) {
    fftw_free(in);
    fftw_free(out);
    throw std::bad_alloc();
  }
  for (std::size_t k = 0; k < bins; ++k) {
    const auto value = k < spectrum.size() ? spectrum[k] : std::complex<double>{};
    in[k][0] = value.real();
    in[k][1] = value.imag();
  }
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(size), in, out, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::vector<double> result(out, out + size);
  for (double& x : result) x /= static_cast<double>(size);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return result;
}

std::size_t next_power_of_two(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace usonic
