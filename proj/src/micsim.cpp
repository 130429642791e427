#include "usonic/micsim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "usonic/error.hpp"
#include "usonic/fir.hpp"
#include "usonic/resample.hpp"

namespace usonic {

void validate(const MicModel& model) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::config, "mic model: " + msg); };
  if (model.gains.empty()) fail("at least the linear gain G1 is required");
  if (!(model.gains.front() > 0.0)) fail("linear gain G1 must be positive");
  for (double g : model.gains) {
    if (!std::isfinite(g)) fail("gains must be finite");
  }
  if (model.adc_rate_hz <= 0) fail("ADC rate must be positive");
  if (!(model.lpf_cutoff_hz > 0.0 && model.lpf_cutoff_hz < model.adc_rate_hz / 2.0)) {
    fail("LPF cutoff must lie in (0, ADC Nyquist)");
  }
  if (!(model.lpf_transition_hz > 0.0 && model.lpf_attenuation_db > 0.0)) {
    fail("LPF transition and attenuation must be positive");
  }
  if (model.adc_bits < min_adc_bits || model.adc_bits > max_adc_bits) {
    fail("ADC bits must be in [8, 32]");
  }
  if (!(model.input_clip > 0.0)) fail("input clip must be positive");
}

SampledSignal nonlinearity(const SampledSignal& signal, const MicModel& model) {
  if (model.gains.empty()) throw Error(ErrorKind::config, "nonlinearity: empty gains list");
  if (!(model.input_clip > 0.0)) throw Error(ErrorKind::config, "nonlinearity: input clip must be positive");
  SampledSignal out{std::vector<double>(signal.size()), signal.sample_rate};
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double x = std::clamp(signal.samples[i], -model.input_clip, model.input_clip);
    // Horner form of G1 x + G2 x^2 + ... + Gk x^k.
    double acc = 0.0;
    for (auto g = model.gains.rbegin(); g != model.gains.rend(); ++g) acc = (acc + *g) * x;
    out.samples[i] = acc;
  }
  return out;
}

double quantization_step(int bits) {
  if (bits < min_adc_bits || bits > max_adc_bits) {
    throw Error(ErrorKind::config, "quantizer bits must be in [8, 32]");
  }
  return std::ldexp(1.0, -(bits - 1));
}

SampledSignal quantize(const SampledSignal& signal, int bits) {
  const double step = quantization_step(bits);
  const double top = std::ldexp(1.0, bits - 1);
  SampledSignal out{std::vector<double>(signal.size()), signal.sample_rate};
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double level = std::clamp(std::round(signal.samples[i] / step), -top, top - 1.0);
    out.samples[i] = level * step;
  }
  return out;
}

MicTrace simulate_trace(const SampledSignal& signal, const MicModel& model) {
  validate(model);
  require_valid(signal, "simulate");
  if (signal.sample_rate < 2.0 * model.lpf_cutoff_hz) {
    std::ostringstream msg;
    msg << "simulate: input rate " << signal.sample_rate << " Hz is below twice the LPF cutoff";
    throw Error(ErrorKind::config, msg.str());
  }
  MicTrace trace;
  trace.after_nonlinearity = nonlinearity(signal, model);
  const FirFilter lpf = design_lowpass(
      {model.lpf_cutoff_hz, model.lpf_transition_hz, model.lpf_attenuation_db}, signal.sample_rate);
  trace.after_lowpass = apply_filter(lpf, trace.after_nonlinearity);
  trace.before_quantization = resample(trace.after_lowpass, model.adc_rate_hz);
  trace.output = quantize(trace.before_quantization, model.adc_bits);
  return trace;
}

SampledSignal simulate(const SampledSignal& signal, const MicModel& model) {
  return simulate_trace(signal, model).output;
}

}  // namespace usonic
