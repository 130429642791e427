#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "usonic/signal.hpp"

namespace usonic {

enum class WavEncoding { pcm16, float32 };

struct WavReadResult {
  SampledSignal signal;
  int channels = 1;
  WavEncoding encoding = WavEncoding::pcm16;
};

struct WavWriteResult {
  std::size_t clipped_samples = 0;
};

/// Reads PCM 16-bit or IEEE float 32-bit RIFF/WAVE. Only channel 0 of a
/// multi-channel file is kept; `channels` reports what the file held.
WavReadResult read_wav_file(const std::filesystem::path& path);
SampledSignal read_wav(const std::filesystem::path& path);

/// Always writes mono. For pcm16, +1.0 maps to 32767 and -1.0 to -32768;
/// samples outside that range saturate and are counted.
WavWriteResult write_wav(const SampledSignal& signal, const std::filesystem::path& path,
                         WavEncoding encoding);

const char* to_string(WavEncoding encoding) noexcept;
WavEncoding parse_wav_encoding(const std::string& name);

}  // namespace usonic
