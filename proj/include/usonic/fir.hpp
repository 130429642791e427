#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "usonic/signal.hpp"

namespace usonic {

/// Low-pass design request. The passband extends to cutoff_hz and the
/// stopband begins at cutoff_hz + transition_width_hz.
struct FilterSpec {
  double cutoff_hz = 0.0;
  double transition_width_hz = 0.0;
  double stopband_attenuation_db = 60.0;
};

/// Linear-phase FIR. Taps are symmetric and odd in length, so the delay is a
/// whole number of samples.
struct FirFilter {
  std::vector<double> taps;
  std::size_t group_delay_samples = 0;
};

inline constexpr std::size_t max_fir_taps = 8191;
inline constexpr double max_passband_ripple_db = 0.5;

/// Kaiser-windowed sinc design. Throws design when the spec does not fit
/// below Nyquist or needs more than max_fir_taps taps.
FirFilter design_lowpass(const FilterSpec& spec, double sample_rate);

/// Convolves and removes the group delay: output[n] lines up with input[n],
/// the tail is zero-padded, and the length and rate are unchanged.
SampledSignal apply_filter(const FirFilter& filter, const SampledSignal& signal);

/// |H(f)| of a symmetric odd-length FIR.
double magnitude_response(std::span<const double> taps, double frequency_hz,
                          double sample_rate);

namespace detail {

double kaiser_beta(double attenuation_db) noexcept;
std::size_t kaiser_tap_estimate(double attenuation_db, double transition_cycles) noexcept;

/// Shared by design_lowpass and the resampler prototype. Edges are in cycles
/// per sample. Taps are grown past the Kaiser estimate until the measured
/// response meets the attenuation and ripple targets.
std::vector<double> kaiser_lowpass(double pass_edge, double stop_edge,
                                   double attenuation_db, std::size_t max_taps);

}  // namespace detail
}  // namespace usonic
