#include "usonic/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "usonic/error.hpp"
#include "usonic/fft.hpp"
#include "usonic/resample.hpp"

namespace usonic {
namespace {

struct TriangleFilter {
  std::size_t first_bin = 0;
  std::vector<double> weights;
};

std::vector<TriangleFilter> mel_filterbank(int bands, double low_hz, double high_hz,
                                           std::size_t fft_size, int sample_rate) {
  const double mel_low = hz_to_mel(low_hz);
  const double mel_high = hz_to_mel(high_hz);
  std::vector<double> edges(static_cast<std::size_t>(bands) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_low + (mel_high - mel_low) * i / (edges.size() - 1));
  }
  const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(fft_size);
  const std::size_t bins = fft_size / 2 + 1;
  std::vector<TriangleFilter> bank(static_cast<std::size_t>(bands));
  for (std::size_t b = 0; b < bank.size(); ++b) {
    const double lo = edges[b];
    const double mid = edges[b + 1];
    const double hi = edges[b + 2];
    const auto first = static_cast<std::size_t>(std::ceil(lo / bin_hz));
    bank[b].first_bin = first;
    for (std::size_t k = first; k < bins && k * bin_hz <= hi; ++k) {
      const double f = k * bin_hz;
      const double w = f <= mid ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
      bank[b].weights.push_back(std::max(0.0, w));
    }
  }
  return bank;
}

}  // namespace

double hz_to_mel(double hz) noexcept { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) noexcept { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelEnvelope mel_log_envelope(const SampledSignal& signal, const EnvelopeConfig& config) {
  require_valid(signal, "mel_log_envelope");
  const double high = std::min(config.high_hz, signal.nyquist());
  if (config.bands <= 0 || !(config.low_hz >= 0.0 && config.low_hz < high)) {
    throw Error(ErrorKind::config, "mel_log_envelope: invalid band layout");
  }
  const auto window_len =
      static_cast<std::size_t>(std::llround(config.window_s * signal.sample_rate));
  const auto hop = static_cast<std::size_t>(std::llround(config.hop_s * signal.sample_rate));
  if (window_len < 2 || hop == 0) {
    throw Error(ErrorKind::config, "mel_log_envelope: window and hop must span samples");
  }
  if (signal.size() < window_len) {
    throw Error(ErrorKind::degenerate_input, "mel_log_envelope: signal shorter than one frame");
  }

  const std::size_t fft_size = next_power_of_two(window_len);
  const auto bank = mel_filterbank(config.bands, config.low_hz, high, fft_size, signal.sample_rate);
  std::vector<double> window(window_len);
  for (std::size_t i = 0; i < window_len; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / window_len);
  }

  MelEnvelope env;
  env.bands = bank.size();
  env.frames = 1 + (signal.size() - window_len) / hop;
  env.values.resize(env.frames * env.bands);
  RealFft fft(fft_size);
  std::vector<double> frame(window_len);
  std::vector<double> power(fft.bins());
  for (std::size_t f = 0; f < env.frames; ++f) {
    const auto begin = signal.samples.begin() + static_cast<std::ptrdiff_t>(f * hop);
    const double mean = std::accumulate(begin, begin + static_cast<std::ptrdiff_t>(window_len), 0.0) /
                        static_cast<double>(window_len);
    for (std::size_t i = 0; i < window_len; ++i) frame[i] = (begin[i] - mean) * window[i];
    const auto bins = fft.forward(frame);
    for (std::size_t k = 0; k < bins.size(); ++k) power[k] = std::norm(bins[k]);
    for (std::size_t b = 0; b < bank.size(); ++b) {
      double e = 0.0;
      for (std::size_t j = 0; j < bank[b].weights.size(); ++j) {
        e += bank[b].weights[j] * power[bank[b].first_bin + j];
      }
      env.values[f * env.bands + b] = e;
    }
  }

  const double loudest = *std::max_element(env.values.begin(), env.values.end());
  if (!(loudest > 0.0)) {
    throw Error(ErrorKind::degenerate_input, "mel_log_envelope: no energy in the analysis band");
  }
  const double floor = loudest * std::pow(10.0, config.floor_db / 10.0);
  for (double& v : env.values) v = std::log(std::max(v, floor));
  return env;
}

double recovery_score(const SampledSignal& original, const SampledSignal& recovered,
                      const EnvelopeConfig& config) {
  require_valid(original, "recovery_score");
  require_valid(recovered, "recovery_score");
  const int rate = std::min(original.sample_rate, recovered.sample_rate);
  const MelEnvelope a = mel_log_envelope(resample(original, rate), config);
  const MelEnvelope b = mel_log_envelope(resample(recovered, rate), config);

  const auto max_lag = static_cast<std::ptrdiff_t>(std::llround(config.max_lag_s / config.hop_s));
  const auto frames_a = static_cast<std::ptrdiff_t>(a.frames);
  const auto frames_b = static_cast<std::ptrdiff_t>(b.frames);
  const std::size_t bands = a.bands;

  double best = -1.0;
  bool any = false;
  for (std::ptrdiff_t lag = -max_lag; lag <= max_lag; ++lag) {
    // Pairs frame i + lag of `a` with frame i of `b`.
    const std::ptrdiff_t first = std::max<std::ptrdiff_t>(0, -lag);
    const std::ptrdiff_t last = std::min(frames_a - lag, frames_b);
    if (last - first < 1) continue;
    const auto count = static_cast<double>((last - first) * static_cast<std::ptrdiff_t>(bands));
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (std::ptrdiff_t i = first; i < last; ++i) {
      for (std::size_t k = 0; k < bands; ++k) {
        sum_a += a.values[(i + lag) * bands + k];
        sum_b += b.values[i * bands + k];
      }
    }
    const double mean_a = sum_a / count;
    const double mean_b = sum_b / count;
    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::ptrdiff_t i = first; i < last; ++i) {
      for (std::size_t k = 0; k < bands; ++k) {
        const double da = a.values[(i + lag) * bands + k] - mean_a;
        const double db = b.values[i * bands + k] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
      }
    }
    const double denom = std::sqrt(var_a * var_b);
    const double r = denom > 0.0 ? cov / denom : 0.0;
    best = any ? std::max(best, r) : r;
    any = true;
  }
  if (!any) throw Error(ErrorKind::degenerate_input, "recovery_score: signals do not overlap");
  return std::clamp(best, -1.0, 1.0);
}

}  // namespace usonic
