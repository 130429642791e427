#pragma once

#include "usonic/signal.hpp"

namespace usonic {

/// Highest frequency treated as audible.
inline constexpr double audible_limit_hz = 20000.0;
/// Shortest voice clip accepted by the synthesis pipeline.
inline constexpr double min_voice_duration_s = 0.032;
/// The upper sideband must end below this fraction of the output rate.
inline constexpr double output_band_fraction = 0.45;

struct AttackConfig {
  double baseband_cutoff_hz = 8000.0;
  int output_rate_hz = 192000;
  double carrier_hz = 30000.0;
  double modulation_depth = 1.0;
  double output_peak = 0.9;
  /// Raised-cosine fade at both ends of the attack signal; 0 disables it.
  double fade_ms = 10.0;
  double baseband_transition_hz = 1000.0;
  double baseband_attenuation_db = 60.0;
};

/// Throws config unless the lower sideband clears the audible band and the
/// upper sideband fits under the output rate.
void validate(const AttackConfig& config);

/// Low-pass at the baseband cutoff, then resample to the output rate.
SampledSignal baseband_prepare(const SampledSignal& voice, const AttackConfig& config);

/// Double-sideband modulation: peak-normalize to modulation_depth, multiply
/// by cos(2 pi f_c t) with zero phase at sample 0.
SampledSignal am_modulate(const SampledSignal& s_up, const AttackConfig& config);

/// Adds a unit carrier and scales the sum so that its peak is output_peak.
SampledSignal add_carrier(const SampledSignal& s_modu, const AttackConfig& config);

/// Full pipeline: baseband_prepare, am_modulate, add_carrier, then the
/// optional fade with the peak restored to output_peak.
SampledSignal synthesize_attack(const SampledSignal& voice, const AttackConfig& config);

/// cos(2 pi f t), phase 0 at sample 0.
SampledSignal carrier_wave(std::size_t length, double frequency_hz, int sample_rate);

void apply_fade(SampledSignal& signal, double fade_ms);

}  // namespace usonic
