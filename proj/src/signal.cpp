#include "usonic/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "usonic/error.hpp"

namespace usonic {

void require_valid(const SampledSignal& signal, const char* context) {
  if (signal.sample_rate <= 0) {
    throw Error(ErrorKind::config,
                std::string(context) + ": sample rate must be positive");
  }
  if (signal.empty()) {
    throw Error(ErrorKind::degenerate_input, std::string(context) + ": empty signal");
  }
  const bool finite = std::all_of(signal.samples.begin(), signal.samples.end(),
                                  [](double x) { return std::isfinite(x); });
  if (!finite) {
    throw Error(ErrorKind::degenerate_input,
                std::string(context) + ": signal contains non-finite samples");
  }
}

double peak_abs(std::span<const double> samples) noexcept {
  double peak = 0.0;
  for (double x : samples) peak = std::max(peak, std::abs(x));
  return peak;
}

double energy(std::span<const double> samples) noexcept {
  double sum = 0.0;
  for (double x : samples) sum += x * x;
  return sum;
}

double rms(std::span<const double> samples) noexcept {
  if (samples.empty()) return 0.0;
  return std::sqrt(energy(samples) / static_cast<double>(samples.size()));
}

SampledSignal normalize_peak(const SampledSignal& signal, double target_peak) {
  require_valid(signal, "normalize_peak");
  if (!(target_peak > 0.0 && target_peak <= 1.0)) {
    throw Error(ErrorKind::config, "normalize_peak: target peak must be in (0, 1]");
  }
  const double peak = peak_abs(signal.samples);
  if (peak == 0.0) {
    throw Error(ErrorKind::degenerate_input, "normalize_peak: signal is all zero");
  }
  return scaled(signal, target_peak / peak);
}

SampledSignal scaled(const SampledSignal& signal, double gain) {
  SampledSignal out{signal.samples, signal.sample_rate};
  for (double& x : out.samples) x *= gain;
  return out;
}

}  // namespace usonic
