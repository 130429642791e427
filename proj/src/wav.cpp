#include "usonic/wav.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>

#include "usonic/error.hpp"

namespace usonic {
namespace {

constexpr std::uint16_t format_pcm = 0x0001;
constexpr std::uint16_t format_ieee_float = 0x0003;
constexpr std::uint16_t format_extensible = 0xFFFE;

std::uint16_t load_u16(const std::uint8_t* p) noexcept {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t load_u32(const std::uint8_t* p) noexcept {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

bool has_id(const std::uint8_t* p, const char (&id)[5]) noexcept {
  return std::memcmp(p, id, 4) == 0;
}

struct FormatChunk {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

class ByteWriter {
 public:
  void id(const char (&tag)[5]) { bytes_.insert(bytes_.end(), tag, tag + 4); }
  void u16(std::uint16_t v) {
    bytes_.push_back(static_cast<std::uint8_t>(v & 0xFF));
    bytes_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) {
      bytes_.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
    }
  }
  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

std::int16_t to_pcm16(double x, std::size_t& clipped) {
  if (x > 1.0 || x < -1.0) ++clipped;
  const double scaled = std::round(x * 32768.0);
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

}  // namespace

WavReadResult read_wav_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::io, "read failed for " + path.string());

  const std::string where = " in " + path.string();
  if (bytes.size() < 12 || !has_id(bytes.data(), "RIFF") || !has_id(bytes.data() + 8, "WAVE")) {
    throw Error(ErrorKind::format, "not a RIFF/WAVE file" + where);
  }

  std::optional<FormatChunk> fmt;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* header = bytes.data() + pos;
    const std::size_t chunk_size = load_u32(header + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = std::min(chunk_size, bytes.size() - body);
    if (has_id(header, "fmt ")) {
      if (available < 16) throw Error(ErrorKind::format, "truncated fmt chunk" + where);
      const std::uint8_t* p = bytes.data() + body;
      FormatChunk f;
      f.tag = load_u16(p);
      f.channels = load_u16(p + 2);
      f.sample_rate = load_u32(p + 4);
      f.block_align = load_u16(p + 12);
      f.bits = load_u16(p + 14);
      if (f.tag == format_extensible) {
        if (available < 40) throw Error(ErrorKind::format, "truncated extensible fmt chunk" + where);
        f.tag = load_u16(p + 24);  // first two bytes of the sub-format GUID
      }
      fmt = f;
    } else if (has_id(header, "data")) {
      data = bytes.data() + body;
      data_size = available;
      if (fmt) break;
    }
    pos = body + chunk_size + (chunk_size & 1);
  }
  if (!fmt) throw Error(ErrorKind::format, "missing fmt chunk" + where);
  if (data == nullptr) throw Error(ErrorKind::format, "missing data chunk" + where);
  if (fmt->channels == 0 || fmt->sample_rate == 0 || fmt->block_align == 0) {
    throw Error(ErrorKind::format, "invalid fmt chunk fields" + where);
  }

  WavReadResult result;
  result.channels = fmt->channels;
  result.signal.sample_rate = static_cast<int>(fmt->sample_rate);
  if (fmt->tag == format_pcm && fmt->bits == 16) {
    result.encoding = WavEncoding::pcm16;
  } else if (fmt->tag == format_ieee_float && fmt->bits == 32) {
    result.encoding = WavEncoding::float32;
  } else {
    throw Error(ErrorKind::unsupported_format,
                "only 16-bit PCM and 32-bit float are supported (format tag " +
                    std::to_string(fmt->tag) + ", " + std::to_string(fmt->bits) + " bits)" + where);
  }
  const std::size_t sample_bytes = fmt->bits / 8;
  if (fmt->block_align < sample_bytes * fmt->channels) {
    throw Error(ErrorKind::format, "block alignment smaller than one frame" + where);
  }
  const std::size_t frames = data_size / fmt->block_align;
  result.signal.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const std::uint8_t* p = data + i * fmt->block_align;
    if (result.encoding == WavEncoding::pcm16) {
      const auto v = static_cast<std::int16_t>(load_u16(p));
      result.signal.samples[i] = static_cast<double>(v) / 32768.0;
    } else {
      result.signal.samples[i] = static_cast<double>(std::bit_cast<float>(load_u32(p)));
    }
  }
  return result;
}

SampledSignal read_wav(const std::filesystem::path& path) {
  return read_wav_file(path).signal;
}

WavWriteResult write_wav(const SampledSignal& signal, const std::filesystem::path& path,
                         WavEncoding encoding) {
  if (signal.sample_rate <= 0) throw Error(ErrorKind::config, "write_wav: sample rate must be positive");
  const bool pcm = encoding == WavEncoding::pcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint16_t block_align = bits / 8;
  const std::size_t data_bytes = signal.size() * block_align;
  if (data_bytes > 0xFFFFFF00u) throw Error(ErrorKind::config, "write_wav: signal too long for RIFF");
  const std::uint32_t fmt_size = pcm ? 16 : 18;
  const std::uint32_t fact_size = pcm ? 0 : 12;
  const std::uint32_t riff_size =
      4 + (8 + fmt_size) + fact_size + 8 + static_cast<std::uint32_t>(data_bytes);

  WavWriteResult result;
  ByteWriter w;
  w.id("RIFF");
  w.u32(riff_size);
  w.id("WAVE");
  w.id("fmt ");
  w.u32(fmt_size);
  w.u16(pcm ? format_pcm : format_ieee_float);
  w.u16(1);
  w.u32(static_cast<std::uint32_t>(signal.sample_rate));
  w.u32(static_cast<std::uint32_t>(signal.sample_rate) * block_align);
  w.u16(block_align);
  w.u16(bits);
  if (!pcm) {
    w.u16(0);  // cbSize
    w.id("fact");
    w.u32(4);
    w.u32(static_cast<std::uint32_t>(signal.size()));
  }
  w.id("data");
  w.u32(static_cast<std::uint32_t>(data_bytes));
  for (double x : signal.samples) {
    if (pcm) {
      w.u16(static_cast<std::uint16_t>(to_pcm16(x, result.clipped_samples)));
    } else {
      w.u32(std::bit_cast<std::uint32_t>(static_cast<float>(x)));
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(w.bytes().data()),
            static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
  return result;
}

const char* to_string(WavEncoding encoding) noexcept {
  return encoding == WavEncoding::pcm16 ? "pcm16" : "float32";
}

WavEncoding parse_wav_encoding(const std::string& name) {
  if (name == "pcm16") return WavEncoding::pcm16;
  if (name == "float32") return WavEncoding::float32;
  throw Error(ErrorKind::config, "unknown WAV encoding '" + name + "' (pcm16 or float32)");
}

}  // namespace usonic
