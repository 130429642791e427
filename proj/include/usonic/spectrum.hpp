#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "usonic/signal.hpp"

namespace usonic {

inline constexpr double db_floor = -120.0;
inline constexpr std::size_t min_spectrum_length = 1024;

struct Tone {
  double frequency_hz = 0.0;
  double amplitude = 0.0;
};

struct Band {
  double low_hz = 0.0;
  double high_hz = 0.0;
};

struct BandEnergy {
  double low_hz = 0.0;
  double high_hz = 0.0;
  double fraction = 0.0;
};

enum class Window { rectangular, hann };

/// One-sided Hann-windowed amplitude spectrum of the whole signal with the
/// window's coherent gain divided out, so a bin-centred tone of amplitude A
/// reads A and a DC offset c reads c.
struct AmplitudeSpectrum {
  std::vector<double> amplitude;
  double bin_hz = 0.0;

  double frequency(std::size_t bin) const noexcept { return bin * bin_hz; }
};

AmplitudeSpectrum amplitude_spectrum(const SampledSignal& signal);

/// Amplitude of the component nearest frequency_hz. When the nearest bin is a
/// local maximum the estimate is refined by log-parabolic interpolation.
double tone_amplitude(const AmplitudeSpectrum& spectrum, double frequency_hz);

/// Local maxima of the amplitude spectrum whose topographic prominence is at
/// least min_prominence_db, refined by 3-bin log-parabolic interpolation and
/// sorted by descending amplitude.
std::vector<Tone> spectrum_peaks(const SampledSignal& signal, double min_prominence_db);

/// Fraction of the signal's spectral energy inside each band. Bands are
/// half-open [low, high) except that a band ending at Nyquist includes it,
/// so a full partition of [0, Nyquist] sums to 1.
std::vector<BandEnergy> band_energy(const SampledSignal& signal, std::span<const Band> bands,
                                    Window window = Window::hann);

/// Convenience: energy fraction below `limit_hz` (Hann window).
double energy_fraction_below(const SampledSignal& signal, double limit_hz);

/// Hann STFT magnitude in dB. A unit-amplitude bin-centred tone reads 0 dB;
/// values are clamped at db_floor. `db` is frame-major.
struct Spectrogram {
  std::vector<double> times_s;
  std::vector<double> frequencies_hz;
  std::vector<std::vector<double>> db;
};

Spectrogram spectrogram(const SampledSignal& signal, std::size_t window_len, std::size_t hop);

struct SpectralReport {
  std::vector<Tone> tone_table;
  std::vector<BandEnergy> band_energies;
  Spectrogram spectrogram;
  std::map<std::string, double> metrics;
};

}  // namespace usonic
