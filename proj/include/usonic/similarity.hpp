#pragma once

#include <cstddef>
#include <vector>

#include "usonic/signal.hpp"

namespace usonic {

struct EnvelopeConfig {
  int bands = 40;
  double low_hz = 50.0;
  double high_hz = 8000.0;
  double window_s = 0.025;
  double hop_s = 0.010;
  /// Log energies are clamped this far below the signal's loudest band/frame.
  double floor_db = -20.0;
  double max_lag_s = 0.050;
};

/// Mel-band log-energy envelopes, frame-major: values[frame * bands + band].
struct MelEnvelope {
  std::vector<double> values;
  std::size_t frames = 0;
  std::size_t bands = 0;
};

MelEnvelope mel_log_envelope(const SampledSignal& signal, const EnvelopeConfig& config = {});

/// Best normalized cross-correlation of the two signals' mel envelopes over
/// frame lags within +/- max_lag_s. Signals at different rates are compared
/// at the lower rate. Result is in [-1, 1] and symmetric in its arguments.
double recovery_score(const SampledSignal& original, const SampledSignal& recovered,
                      const EnvelopeConfig& config = {});

double hz_to_mel(double hz) noexcept;
double mel_to_hz(double mel) noexcept;

}  // namespace usonic
