#pragma once

#include <vector>

#include "usonic/signal.hpp"

namespace usonic {

/// Victim microphone: polynomial transducer/amplifier, low-pass, ADC.
struct MicModel {
  /// Polynomial coefficients G1, G2, G3, ... applied to x, x^2, x^3, ...
  std::vector<double> gains{1.0, 0.05, 0.0};
  double lpf_cutoff_hz = 20000.0;
  double lpf_transition_hz = 2000.0;
  double lpf_attenuation_db = 80.0;
  int adc_rate_hz = 48000;
  int adc_bits = 16;
  /// Hard saturation applied before the polynomial.
  double input_clip = 1.0;
};

inline constexpr int min_adc_bits = 8;
inline constexpr int max_adc_bits = 32;

void validate(const MicModel& model);

/// Clips to +/- input_clip, then evaluates sum_i G_i x^i per sample. Only
/// requires a non-empty gains list; the linear gain may be zero.
SampledSignal nonlinearity(const SampledSignal& signal, const MicModel& model);

/// Quantizer step for a given ADC word length: 1 / 2^(bits - 1).
double quantization_step(int bits);

/// Midtread uniform quantizer saturating at [-1, 1 - step].
SampledSignal quantize(const SampledSignal& signal, int bits);

struct MicTrace {
  SampledSignal after_nonlinearity;
  SampledSignal after_lowpass;
  SampledSignal before_quantization;
  SampledSignal output;
};

MicTrace simulate_trace(const SampledSignal& signal, const MicModel& model);
SampledSignal simulate(const SampledSignal& signal, const MicModel& model);

}  // namespace usonic
