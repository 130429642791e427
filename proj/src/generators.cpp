#include "usonic/generators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "usonic/error.hpp"
#include "usonic/fft.hpp"

namespace usonic {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace

SampledSignal tone(double frequency_hz, double amplitude, int sample_rate, std::size_t length,
                   double phase_rad) {
  SampledSignal out{std::vector<double>(length), sample_rate};
  for (std::size_t n = 0; n < length; ++n) {
    const double cycles =
        std::fmod(frequency_hz * static_cast<double>(n), sample_rate) / sample_rate;
    out.samples[n] = amplitude * std::cos(two_pi * cycles + phase_rad);
  }
  return out;
}

SampledSignal tones(const std::vector<double>& frequencies_hz,
                    const std::vector<double>& amplitudes, int sample_rate,
                    std::size_t length) {
  if (frequencies_hz.size() != amplitudes.size()) {
    throw Error(ErrorKind::config, "tones: one amplitude per frequency");
  }
  SampledSignal out{std::vector<double>(length, 0.0), sample_rate};
  for (std::size_t t = 0; t < frequencies_hz.size(); ++t) {
    for (std::size_t n = 0; n < length; ++n) {
      const double cycles =
          std::fmod(frequencies_hz[t] * static_cast<double>(n), sample_rate) / sample_rate;
      out.samples[n] += amplitudes[t] * std::cos(two_pi * cycles);
    }
  }
  return out;
}

SampledSignal linear_chirp(double start_hz, double end_hz, double duration_s, int sample_rate,
                           double amplitude) {
  const auto length = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  const double sweep = (end_hz - start_hz) / duration_s;
  SampledSignal out{std::vector<double>(length), sample_rate};
  for (std::size_t n = 0; n < length; ++n) {
    const double t = static_cast<double>(n) / sample_rate;
    out.samples[n] = amplitude * std::cos(two_pi * (start_hz * t + 0.5 * sweep * t * t));
  }
  return out;
}

SampledSignal harmonic_complex(double fundamental_hz, int harmonics, double duration_s,
                               int sample_rate, double peak) {
  const auto length = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  std::vector<double> freqs;
  std::vector<double> amps;
  for (int k = 1; k <= harmonics; ++k) {
    freqs.push_back(fundamental_hz * k);
    amps.push_back(1.0 / k);
  }
  return normalize_peak(tones(freqs, amps, sample_rate, length), peak);
}

SampledSignal speech_shaped_noise(double duration_s, int sample_rate, std::uint64_t seed,
                                  double peak) {
  const auto length = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  if (length < 2) throw Error(ErrorKind::degenerate_input, "speech_shaped_noise: too short");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t bins = length / 2 + 1;
  const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(length);
  std::vector<std::complex<double>> spectrum(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    const double f = k * bin_hz;
    double shape = 0.0;
    if (f >= 100.0 && f <= 7000.0) shape = f <= 500.0 ? 1.0 : 500.0 / f;
    spectrum[k] = shape * std::complex<double>(re, im);
  }
  SampledSignal out{inverse_real_fft(spectrum, length), sample_rate};
  for (std::size_t n = 0; n < length; ++n) {
    const double t = static_cast<double>(n) / sample_rate;
    const double s = std::sin(std::numbers::pi * 4.0 * t);
    out.samples[n] *= 0.25 + 0.75 * s * s;
  }
  return normalize_peak(out, peak);
}

SampledSignal white_noise(std::size_t length, double rms_level, int sample_rate,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, rms_level);
  SampledSignal out{std::vector<double>(length), sample_rate};
  for (double& x : out.samples) x = normal(rng);
  return out;
}

SampledSignal add_white_noise(const SampledSignal& signal, double rms_level,
                              std::uint64_t seed) {
  if (!(rms_level >= 0.0)) throw Error(ErrorKind::config, "noise level must be non-negative");
  if (rms_level == 0.0) return signal;
  SampledSignal out = white_noise(signal.size(), rms_level, signal.sample_rate, seed);
  for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += signal.samples[i];
  return out;
}

}  // namespace usonic
