#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace usonic {

/// Real-valued samples at a fixed integer sample rate. Amplitudes are
/// dimensionless with a nominal range of [-1, 1].
struct SampledSignal {
  std::vector<double> samples;
  int sample_rate = 0;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  double nyquist() const noexcept { return sample_rate / 2.0; }
  double duration_s() const noexcept {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

/// Throws config for a non-positive rate and degenerate_input for an empty or
/// non-finite sample sequence.
void require_valid(const SampledSignal& signal, const char* context);

double peak_abs(std::span<const double> samples) noexcept;
double rms(std::span<const double> samples) noexcept;
double energy(std::span<const double> samples) noexcept;

/// Scales the signal by a single positive factor so that max |sample| equals
/// target_peak. An all-zero input has no such factor and is rejected.
SampledSignal normalize_peak(const SampledSignal& signal, double target_peak);

SampledSignal scaled(const SampledSignal& signal, double gain);

}  // namespace usonic
