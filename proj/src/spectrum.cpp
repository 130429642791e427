#include "usonic/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "usonic/error.hpp"
#include "usonic/fft.hpp"

namespace usonic {
namespace {

constexpr double floor_amplitude = 1e-6;  // db_floor as a linear amplitude

std::vector<double> periodic_hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / n);
  }
  return w;
}

double to_db(double amplitude) noexcept {
  return std::max(db_floor, 20.0 * std::log10(std::max(amplitude, floor_amplitude)));
}

// Vertex offset and log-amplitude of the parabola through three log values.
struct Vertex {
  double offset = 0.0;
  double log_peak = 0.0;
};

Vertex parabolic_vertex(double left, double center, double right) noexcept {
  const double denom = left - 2.0 * center + right;
  if (denom >= 0.0) return {0.0, center};
  const double p = 0.5 * (left - right) / denom;
  return {p, center - 0.25 * (left - right) * p};
}

bool interpolable(const std::vector<double>& a, std::size_t k) noexcept {
  return k > 0 && k + 1 < a.size() && a[k - 1] > 0.0 && a[k] > 0.0 && a[k + 1] > 0.0 &&
         a[k] >= a[k - 1] && a[k] >= a[k + 1];
}

Tone refine(const AmplitudeSpectrum& s, std::size_t k) {
  if (!interpolable(s.amplitude, k)) return {s.frequency(k), s.amplitude[k]};
  const Vertex v = parabolic_vertex(std::log(s.amplitude[k - 1]), std::log(s.amplitude[k]),
                                    std::log(s.amplitude[k + 1]));
  return {(static_cast<double>(k) + v.offset) * s.bin_hz, std::exp(v.log_peak)};
}

}  // namespace

AmplitudeSpectrum amplitude_spectrum(const SampledSignal& signal) {
  require_valid(signal, "amplitude_spectrum");
  const std::size_t n = signal.size();
  const auto window = periodic_hann(n);
  std::vector<double> frame(n);
  for (std::size_t i = 0; i < n; ++i) frame[i] = signal.samples[i] * window[i];
  RealFft fft(n);
  const auto bins = fft.forward(frame);
  // Coherent gain of the periodic Hann window is exactly 0.5.
  const double dc_scale = 1.0 / (0.5 * static_cast<double>(n));
  AmplitudeSpectrum s;
  s.bin_hz = static_cast<double>(signal.sample_rate) / static_cast<double>(n);
  s.amplitude.resize(bins.size());
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const bool single = k == 0 || (n % 2 == 0 && k == n / 2);
    s.amplitude[k] = std::abs(bins[k]) * dc_scale * (single ? 1.0 : 2.0);
  }
  return s;
}

double tone_amplitude(const AmplitudeSpectrum& spectrum, double frequency_hz) {
  if (spectrum.amplitude.empty()) return 0.0;
  const double position = frequency_hz / spectrum.bin_hz;
  const auto last = static_cast<double>(spectrum.amplitude.size() - 1);
  const auto k = static_cast<std::size_t>(std::clamp(std::round(position), 0.0, last));
  return refine(spectrum, k).amplitude;
}

std::vector<Tone> spectrum_peaks(const SampledSignal& signal, double min_prominence_db) {
  require_valid(signal, "spectrum_peaks");
  if (signal.size() < min_spectrum_length) {
    throw Error(ErrorKind::degenerate_input, "spectrum_peaks: need at least 1024 samples");
  }
  const AmplitudeSpectrum s = amplitude_spectrum(signal);
  const std::size_t bins = s.amplitude.size();
  std::vector<double> db(bins);
  std::transform(s.amplitude.begin(), s.amplitude.end(), db.begin(), to_db);

  std::vector<Tone> peaks;
  for (std::size_t k = 0; k < bins; ++k) {
    if (db[k] <= db_floor) continue;
    const bool above_left = k == 0 || db[k] > db[k - 1];
    const bool above_right = k + 1 == bins || db[k] >= db[k + 1];
    if (!above_left || !above_right || bins == 1) continue;

    // Topographic prominence: walk outwards until a higher bin or the edge.
    double left_min = db[k];
    bool has_left = k > 0;
    for (std::size_t i = k; i-- > 0;) {
      if (db[i] > db[k]) break;
      left_min = std::min(left_min, db[i]);
    }
    double right_min = db[k];
    bool has_right = k + 1 < bins;
    for (std::size_t i = k + 1; i < bins; ++i) {
      if (db[i] > db[k]) break;
      right_min = std::min(right_min, db[i]);
    }
    double base;
    if (has_left && has_right) {
      base = std::max(left_min, right_min);
    } else {
      base = has_left ? left_min : right_min;
    }
    if (db[k] - base >= min_prominence_db) peaks.push_back(refine(s, k));
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Tone& a, const Tone& b) { return a.amplitude > b.amplitude; });
  return peaks;
}

std::vector<BandEnergy> band_energy(const SampledSignal& signal, std::span<const Band> bands,
                                    Window window) {
  require_valid(signal, "band_energy");
  const double nyquist = signal.nyquist();
  std::vector<Band> sorted(bands.begin(), bands.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Band& a, const Band& b) { return a.low_hz < b.low_hz; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Band& b = sorted[i];
    if (!(b.low_hz >= 0.0 && b.high_hz > b.low_hz && b.high_hz <= nyquist)) {
      std::ostringstream msg;
      msg << "band_energy: band [" << b.low_hz << ", " << b.high_hz << "] outside [0, "
          << nyquist << "]";
      throw Error(ErrorKind::config, msg.str());
    }
    if (i > 0 && b.low_hz < sorted[i - 1].high_hz) {
      throw Error(ErrorKind::config, "band_energy: bands overlap");
    }
  }

  const std::size_t n = signal.size();
  std::vector<double> frame = signal.samples;
  if (window == Window::hann) {
    const auto w = periodic_hann(n);
    for (std::size_t i = 0; i < n; ++i) frame[i] *= w[i];
  }
  RealFft fft(n);
  const auto bins = fft.forward(frame);
  const double bin_hz = static_cast<double>(signal.sample_rate) / static_cast<double>(n);
  std::vector<double> power(bins.size());
  double total = 0.0;
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const bool single = k == 0 || (n % 2 == 0 && k == n / 2);
    power[k] = std::norm(bins[k]) * (single ? 1.0 : 2.0);
    total += power[k];
  }
  if (total == 0.0) throw Error(ErrorKind::degenerate_input, "band_energy: signal has no energy");

  std::vector<BandEnergy> result;
  result.reserve(bands.size());
  for (const Band& b : bands) {
    const bool closes_at_nyquist = b.high_hz >= nyquist;
    double sum = 0.0;
    for (std::size_t k = 0; k < power.size(); ++k) {
      const double f = k * bin_hz;
      if (f >= b.low_hz && (f < b.high_hz || (closes_at_nyquist && f <= nyquist))) sum += power[k];
    }
    result.push_back({b.low_hz, b.high_hz, sum / total});
  }
  return result;
}

double energy_fraction_below(const SampledSignal& signal, double limit_hz) {
  const Band band{0.0, std::min(limit_hz, signal.nyquist())};
  return band_energy(signal, std::span<const Band>(&band, 1)).front().fraction;
}

Spectrogram spectrogram(const SampledSignal& signal, std::size_t window_len, std::size_t hop) {
  require_valid(signal, "spectrogram");
  if (window_len < 256 || (window_len & (window_len - 1)) != 0) {
    throw Error(ErrorKind::config, "spectrogram: window length must be a power of two >= 256");
  }
  if (hop == 0 || hop > window_len) {
    throw Error(ErrorKind::config, "spectrogram: hop must be in [1, window length]");
  }
  if (signal.size() < window_len) {
    throw Error(ErrorKind::degenerate_input, "spectrogram: signal shorter than one window");
  }
  const auto window = periodic_hann(window_len);
  const double scale = 2.0 / (0.5 * static_cast<double>(window_len));
  const double rate = signal.sample_rate;
  const std::size_t frames = 1 + (signal.size() - window_len) / hop;

  Spectrogram out;
  RealFft fft(window_len);
  for (std::size_t k = 0; k < fft.bins(); ++k) {
    out.frequencies_hz.push_back(k * rate / static_cast<double>(window_len));
  }
  std::vector<double> frame(window_len);
  out.db.reserve(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t start = f * hop;
    for (std::size_t i = 0; i < window_len; ++i) frame[i] = signal.samples[start + i] * window[i];
    const auto bins = fft.forward(frame);
    std::vector<double> row(bins.size());
    for (std::size_t k = 0; k < bins.size(); ++k) {
      const bool single = k == 0 || k == window_len / 2;
      row[k] = to_db(std::abs(bins[k]) * scale * (single ? 0.5 : 1.0));
    }
    out.db.push_back(std::move(row));
    out.times_s.push_back((static_cast<double>(start) + window_len / 2.0) / rate);
  }
  return out;
}

}  // namespace usonic
