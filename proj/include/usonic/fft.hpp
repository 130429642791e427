#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <fftw3.h>

namespace usonic {

/// Reusable real-to-complex transform of a fixed size. One instance must not
/// be shared between threads; separate instances are independent.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const noexcept { return size_; }
  std::size_t bins() const noexcept { return size_ / 2 + 1; }

  /// Input shorter than size() is zero-padded. The returned span holds
  /// bins() values and stays valid until the next call.
  std::span<const std::complex<double>> forward(std::span<const double> input);

 private:
  std::size_t size_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

/// Inverse of a one-sided spectrum of `size` real samples, scaled so that
/// inverse_real_fft(forward(x)) == x.
std::vector<double> inverse_real_fft(std::span<const std::complex<double>> spectrum,
                                     std::size_t size);

std::size_t next_power_of_two(std::size_t n) noexcept;

}  // namespace usonic
