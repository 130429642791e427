#include "usonic/fir.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "usonic/error.hpp"

namespace usonic {
namespace detail {
namespace {

double sinc(double x) noexcept {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

std::vector<double> kaiser_sinc(std::size_t length, double cutoff, double beta) {
  std::vector<double> taps(length);
  const double center = (static_cast<double>(length) - 1.0) / 2.0;
  const double norm = std::cyl_bessel_i(0.0, beta);
  double sum = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    const double offset = static_cast<double>(i) - center;
    const double r = center > 0.0 ? offset / center : 0.0;
    const double window = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / norm;
    taps[i] = 2.0 * cutoff * sinc(2.0 * cutoff * offset) * window;
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Zero-phase amplitude of a symmetric odd-length filter at `f` cycles/sample.
double zero_phase_response(std::span<const double> taps, double f) {
  const std::size_t center = taps.size() / 2;
  const std::complex<double> step = std::polar(1.0, 2.0 * std::numbers::pi * f);
  std::complex<double> rot = step;
  double acc = taps[center];
  for (std::size_t k = 1; k <= center; ++k) {
    acc += 2.0 * taps[center + k] * rot.real();
    rot *= step;
  }
  return acc;
}

bool meets_targets(std::span<const double> taps, double pass_edge, double stop_edge,
                   double attenuation_db) {
  const double n = static_cast<double>(taps.size());
  const double stop_limit = std::pow(10.0, -attenuation_db / 20.0);
  const double fine = 1.0 / (8.0 * n);
  const double near = 24.0 / n;

  auto stop_ok = [&](double f) { return std::abs(zero_phase_response(taps, f)) <= stop_limit; };
  auto pass_ok = [&](double f) {
    const double gain = std::abs(zero_phase_response(taps, f));
    return gain > 0.0 && std::abs(20.0 * std::log10(gain)) <= max_passband_ripple_db;
  };

  // Sidelobes peak next to the band edges, so sample those densely.
  for (double f = stop_edge; f <= std::min(0.5, stop_edge + near); f += fine) {
    if (!stop_ok(f)) return false;
  }
  constexpr int coarse = 256;
  for (int i = 0; i <= coarse; ++i) {
    const double f = stop_edge + (0.5 - stop_edge) * i / coarse;
    if (!stop_ok(f)) return false;
  }
  for (double f = pass_edge; f >= std::max(0.0, pass_edge - near); f -= fine) {
    if (!pass_ok(f)) return false;
  }
  constexpr int pass_points = 64;
  for (int i = 0; i <= pass_points; ++i) {
    if (!pass_ok(pass_edge * i / pass_points)) return false;
  }
  return true;
}

}  // namespace

double kaiser_beta(double attenuation_db) noexcept {
  if (attenuation_db > 50.0) return 0.1102 * (attenuation_db - 8.7);
  if (attenuation_db >= 21.0) {
    return 0.5842 * std::pow(attenuation_db - 21.0, 0.4) + 0.07886 * (attenuation_db - 21.0);
  }
  return 0.0;
}

std::size_t kaiser_tap_estimate(double attenuation_db, double transition_cycles) noexcept {
  const double width = 2.0 * std::numbers::pi * transition_cycles;
  const double estimate = attenuation_db > 21.0
                              ? (attenuation_db - 7.95) / (2.285 * width)
                              : 5.79 / width;
  auto taps = static_cast<std::size_t>(std::ceil(estimate)) + 1;
  if (taps % 2 == 0) ++taps;
  return std::max<std::size_t>(taps, 3);
}

std::vector<double> kaiser_lowpass(double pass_edge, double stop_edge, double attenuation_db,
                                   std::size_t max_taps) {
  if (!(pass_edge > 0.0 && stop_edge > pass_edge && stop_edge < 0.5)) {
    std::ostringstream msg;
    msg << "low-pass edges must satisfy 0 < pass (" << pass_edge << ") < stop (" << stop_edge
        << ") < Nyquist";
    throw Error(ErrorKind::design, msg.str());
  }
  if (!(attenuation_db > 0.0)) {
    throw Error(ErrorKind::design, "stopband attenuation must be positive");
  }
  const double beta = kaiser_beta(attenuation_db);
  const double cutoff = 0.5 * (pass_edge + stop_edge);
  std::size_t length = kaiser_tap_estimate(attenuation_db, stop_edge - pass_edge);
  while (length <= max_taps) {
    auto taps = kaiser_sinc(length, cutoff, beta);
    if (meets_targets(taps, pass_edge, stop_edge, attenuation_db)) return taps;
    length += std::max<std::size_t>(2, (length / 32) * 2);
  }
  std::ostringstream msg;
  msg << "transition too narrow: more than " << max_taps << " taps needed";
  throw Error(ErrorKind::design, msg.str());
}

}  // namespace detail

FirFilter design_lowpass(const FilterSpec& spec, double sample_rate) {
  if (!(sample_rate > 0.0)) throw Error(ErrorKind::design, "sample rate must be positive");
  if (!(spec.cutoff_hz > 0.0 && spec.transition_width_hz > 0.0)) {
    throw Error(ErrorKind::design, "cutoff and transition width must be positive");
  }
  if (spec.cutoff_hz + spec.transition_width_hz >= sample_rate / 2.0) {
    std::ostringstream msg;
    msg << "cutoff " << spec.cutoff_hz << " Hz + transition " << spec.transition_width_hz
        << " Hz does not fit below Nyquist " << sample_rate / 2.0 << " Hz";
    throw Error(ErrorKind::design, msg.str());
  }
  FirFilter filter;
  filter.taps = detail::kaiser_lowpass(spec.cutoff_hz / sample_rate,
                                       (spec.cutoff_hz + spec.transition_width_hz) / sample_rate,
                                       spec.stopband_attenuation_db, max_fir_taps);
  filter.group_delay_samples = (filter.taps.size() - 1) / 2;
  return filter;
}

SampledSignal apply_filter(const FirFilter& filter, const SampledSignal& signal) {
  SampledSignal out{std::vector<double>(signal.size(), 0.0), signal.sample_rate};
  const auto& h = filter.taps;
  if (h.empty() || signal.empty()) return out;
  const auto len = static_cast<std::ptrdiff_t>(signal.size());
  const auto taps = static_cast<std::ptrdiff_t>(h.size());
  const auto delay = static_cast<std::ptrdiff_t>(filter.group_delay_samples);
  const double* x = signal.samples.data();
  for (std::ptrdiff_t n = 0; n < len; ++n) {
    // output[n] = sum_k h[k] x[n + delay - k]
    const std::ptrdiff_t k_lo = std::max<std::ptrdiff_t>(0, n + delay - len + 1);
    const std::ptrdiff_t k_hi = std::min<std::ptrdiff_t>(taps - 1, n + delay);
    double acc = 0.0;
    for (std::ptrdiff_t k = k_lo; k <= k_hi; ++k) acc += h[k] * x[n + delay - k];
    out.samples[n] = acc;
  }
  return out;
}

double magnitude_response(std::span<const double> taps, double frequency_hz,
                          double sample_rate) {
  const double w = 2.0 * std::numbers::pi * frequency_hz / sample_rate;
  std::complex<double> acc{};
  for (std::size_t k = 0; k < taps.size(); ++k) {
    acc += taps[k] * std::polar(1.0, -w * static_cast<double>(k));
  }
  return std::abs(acc);
}

}  // namespace usonic
