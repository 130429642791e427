#pragma once

#include <cstdint>
#include <vector>

#include "usonic/signal.hpp"

// Deterministic test and excitation signals.
namespace usonic {

SampledSignal tone(double frequency_hz, double amplitude, int sample_rate, std::size_t length,
                   double phase_rad = 0.0);

/// Sum of tones sharing one sample grid.
SampledSignal tones(const std::vector<double>& frequencies_hz,
                    const std::vector<double>& amplitudes, int sample_rate,
                    std::size_t length);

SampledSignal linear_chirp(double start_hz, double end_hz, double duration_s,
                           int sample_rate, double amplitude = 0.5);

/// f0, 2 f0, ... with amplitudes falling as 1/k, normalized to `peak`.
SampledSignal harmonic_complex(double fundamental_hz, int harmonics, double duration_s,
                               int sample_rate, double peak = 0.5);

/// Gaussian noise with a long-term speech spectrum (flat to 500 Hz, -6 dB per
/// octave above, nothing outside 100 Hz - 7 kHz) and a 4 Hz syllabic
/// envelope, normalized to `peak`.
SampledSignal speech_shaped_noise(double duration_s, int sample_rate, std::uint64_t seed,
                                  double peak = 0.5);

SampledSignal white_noise(std::size_t length, double rms_level, int sample_rate,
                          std::uint64_t seed);

SampledSignal add_white_noise(const SampledSignal& signal, double rms_level,
                              std::uint64_t seed);

}  // namespace usonic
