#pragma once

#include "usonic/signal.hpp"

namespace usonic {

struct ResampleRatio {
  int up = 1;
  int down = 1;
};

inline constexpr int max_resample_factor = 1000;

/// Reduced target/source ratio. Throws unsupported_ratio when either term
/// exceeds max_resample_factor.
ResampleRatio resample_ratio(int source_rate, int target_rate);

/// Rational polyphase resampler with a Kaiser-sinc kernel whose passband ends
/// at 0.45 x min(source, target) rate and whose stopband starts at the lower
/// Nyquist frequency. Output is time-aligned with the input and has
/// ceil(n * up / down) samples. Same-rate input is returned unchanged.
SampledSignal resample(const SampledSignal& signal, int target_rate);

}  // namespace usonic
