#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "usonic/error.hpp"
#include "usonic/micsim.hpp"
#include "usonic/synth.hpp"
#include "usonic/wav.hpp"

namespace usonic::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  exit_pass = 0,
  exit_metric_fail = 1,
  exit_config = 2,
  exit_io = 3,
  exit_degenerate = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

inline constexpr const char* tool_name = "usonic";
const char* tool_version() noexcept;

struct SynthOptions {
  fs::path input;
  fs::path output;
  AttackConfig attack;
  WavEncoding encoding = WavEncoding::float32;
  std::optional<fs::path> manifest;
};

struct MicsimOptions {
  fs::path input;
  fs::path output;
  MicModel model;
  double noise_rms = 0.0;
  std::uint64_t seed = 0;
  WavEncoding encoding = WavEncoding::float32;
  std::optional<fs::path> manifest;
};

struct VerifyOptions {
  fs::path original;
  fs::path recovered;
  std::optional<fs::path> report;
  double threshold = 0.9;
  std::size_t window = 1024;
  std::size_t hop = 256;
  double min_prominence_db = 20.0;
  std::size_t max_tones = 8;
  std::optional<fs::path> manifest;
};

struct TwotoneOptions {
  double f1_hz = 25000.0;
  double f2_hz = 30000.0;
  double g2 = 0.05;
  int rate_hz = 192000;
  double duration_s = 1.0;
  double tolerance = 0.02;
  std::optional<fs::path> report;
  std::optional<fs::path> manifest;
};

struct SweepOptions {
  fs::path input;
  std::vector<double> attenuations_db{0, 6, 12, 18, 24, 30, 36, 42, 48, 54, 60};
  std::optional<fs::path> report;
  AttackConfig attack;
  MicModel model;
  double noise_rms = 1e-4;
  std::uint64_t seed = 0;
  double jitter = 0.02;
  std::optional<fs::path> manifest;
};

/// One second-order product of the two-tone test.
struct ProductRow {
  std::string label;
  double frequency_hz = 0.0;
  double predicted = 0.0;
  double measured = 0.0;
  /// |measured - predicted| / predicted, or the absolute error when the
  /// prediction is zero.
  double relative_error = 0.0;
  bool pass = false;
};

/// Generates the unit two-tone, runs only the polynomial stage (gains
/// [1, g2], no clipping) and measures DC, 2f1, 2f2, f1+f2 and |f1-f2|.
std::vector<ProductRow> twotone_products(const TwotoneOptions& options);

struct SweepRow {
  double attenuation_db = 0.0;
  double recovery_score = 0.0;
};

/// Synthesizes the attack once, then for each attenuation scales it, adds
/// the seeded noise floor, simulates the microphone and scores recovery.
/// `options.input` is not read.
std::vector<SweepRow> sweep_scores(const SampledSignal& voice, const SweepOptions& options);

/// True when every score is at most its predecessor plus `jitter`.
bool non_increasing(const std::vector<SweepRow>& rows, double jitter) noexcept;

int run_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);
int run_micsim(const MicsimOptions& options, std::ostream& out, std::ostream& err);
int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int run_twotone(const TwotoneOptions& options, std::ostream& out, std::ostream& err);
int run_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);

/// Re-executes the command recorded in a manifest with every recorded
/// setting, rewriting the recorded outputs.
int run_replay(const fs::path& manifest, std::ostream& out, std::ostream& err);

/// Parses a full command line (args[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Manifest (de)serialization, exposed for tests.
nlohmann::json to_json(const AttackConfig& config);
nlohmann::json to_json(const MicModel& model);
AttackConfig attack_config_from_json(const nlohmann::json& j);
MicModel mic_model_from_json(const nlohmann::json& j);

std::string format_number(double value);

}  // namespace usonic::cli
