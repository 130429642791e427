#include "usonic/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "usonic/error.hpp"
#include "usonic/fir.hpp"
#include "usonic/resample.hpp"

namespace usonic {
namespace {

void require_rate(const SampledSignal& signal, const AttackConfig& config, const char* stage) {
  if (signal.sample_rate != config.output_rate_hz) {
    std::ostringstream msg;
    msg << stage << ": signal rate " << signal.sample_rate << " Hz differs from output rate "
        << config.output_rate_hz << " Hz";
    throw Error(ErrorKind::config, msg.str());
  }
}

}  // namespace

void validate(const AttackConfig& config) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::config, "attack config: " + msg); };
  if (!(config.baseband_cutoff_hz > 0.0)) fail("baseband cutoff must be positive");
  if (config.output_rate_hz <= 0) fail("output rate must be positive");
  if (!(config.carrier_hz > 0.0)) fail("carrier frequency must be positive");
  if (!(config.modulation_depth > 0.0 && config.modulation_depth <= 1.0)) {
    fail("modulation depth must be in (0, 1]");
  }
  if (!(config.output_peak > 0.0 && config.output_peak <= 1.0)) fail("output peak must be in (0, 1]");
  if (!(config.fade_ms >= 0.0)) fail("fade length must be non-negative");
  if (!(config.baseband_transition_hz > 0.0 && config.baseband_attenuation_db > 0.0)) {
    fail("baseband filter transition and attenuation must be positive");
  }
  const double lower = config.carrier_hz - config.baseband_cutoff_hz;
  const double upper = config.carrier_hz + config.baseband_cutoff_hz;
  if (lower < audible_limit_hz) {
    std::ostringstream msg;
    msg << "lower sideband starts at " << lower << " Hz, inside the audible band (< "
        << audible_limit_hz << " Hz)";
    fail(msg.str());
  }
  const double limit = output_band_fraction * config.output_rate_hz;
  if (upper > limit) {
    std::ostringstream msg;
    msg << "upper sideband reaches " << upper << " Hz, beyond " << limit << " Hz ("
        << output_band_fraction << " x output rate " << config.output_rate_hz << " Hz)";
    fail(msg.str());
  }
}

SampledSignal baseband_prepare(const SampledSignal& voice, const AttackConfig& config) {
  validate(config);
  require_valid(voice, "baseband_prepare");
  if (voice.duration_s() < min_voice_duration_s) {
    throw Error(ErrorKind::degenerate_input, "baseband_prepare: voice shorter than 32 ms");
  }
  if (voice.sample_rate < 2.0 * config.baseband_cutoff_hz) {
    throw Error(ErrorKind::config, "baseband_prepare: voice rate below twice the baseband cutoff");
  }
  SampledSignal filtered = voice;
  // A voice rate whose Nyquist already sits inside the transition band is
  // band-limited enough; the resampler's guard filter covers the rest.
  if (config.baseband_cutoff_hz + config.baseband_transition_hz < voice.nyquist()) {
    const FirFilter lpf = design_lowpass(
        {config.baseband_cutoff_hz, config.baseband_transition_hz, config.baseband_attenuation_db},
        voice.sample_rate);
    filtered = apply_filter(lpf, voice);
  }
  return resample(filtered, config.output_rate_hz);
}

SampledSignal carrier_wave(std::size_t length, double frequency_hz, int sample_rate) {
  SampledSignal out{std::vector<double>(length), sample_rate};
  const double rate = sample_rate;
  for (std::size_t n = 0; n < length; ++n) {
    // Reduce the phase exactly before scaling to keep long signals precise.
    const double cycles = std::fmod(frequency_hz * static_cast<double>(n), rate) / rate;
    out.samples[n] = std::cos(2.0 * std::numbers::pi * cycles);
  }
  return out;
}

SampledSignal am_modulate(const SampledSignal& s_up, const AttackConfig& config) {
  validate(config);
  require_valid(s_up, "am_modulate");
  require_rate(s_up, config, "am_modulate");
  const double peak = peak_abs(s_up.samples);
  if (peak == 0.0) throw Error(ErrorKind::degenerate_input, "am_modulate: baseband is all zero");
  const double n1 = config.modulation_depth / peak;
  SampledSignal out = carrier_wave(s_up.size(), config.carrier_hz, s_up.sample_rate);
  for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] *= n1 * s_up.samples[i];
  return out;
}

SampledSignal add_carrier(const SampledSignal& s_modu, const AttackConfig& config) {
  validate(config);
  require_valid(s_modu, "add_carrier");
  require_rate(s_modu, config, "add_carrier");
  SampledSignal sum = carrier_wave(s_modu.size(), config.carrier_hz, s_modu.sample_rate);
  for (std::size_t i = 0; i < sum.size(); ++i) sum.samples[i] += s_modu.samples[i];
  return normalize_peak(sum, config.output_peak);
}

void apply_fade(SampledSignal& signal, double fade_ms) {
  if (fade_ms <= 0.0 || signal.empty()) return;
  const auto requested = static_cast<std::size_t>(std::llround(fade_ms * 1e-3 * signal.sample_rate));
  const std::size_t len = std::min(requested, signal.size() / 2);
  const std::size_t n = signal.size();
  for (std::size_t i = 0; i < len; ++i) {
    const double w = 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(i) / len);
    signal.samples[i] *= w;
    signal.samples[n - 1 - i] *= w;
  }
}

SampledSignal synthesize_attack(const SampledSignal& voice, const AttackConfig& config) {
  const SampledSignal s_up = baseband_prepare(voice, config);
  const SampledSignal s_modu = am_modulate(s_up, config);
  SampledSignal s_attack = add_carrier(s_modu, config);
  if (config.fade_ms > 0.0) {
    apply_fade(s_attack, config.fade_ms);
    s_attack = normalize_peak(s_attack, config.output_peak);
  }
  return s_attack;
}

}  // namespace usonic
