#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "usonic/generators.hpp"
#include "usonic/similarity.hpp"
#include "usonic/spectrum.hpp"

#ifndef USONIC_VERSION
#define USONIC_VERSION "0.0.0"
#endif

namespace usonic::cli {
namespace {

using nlohmann::json;

constexpr double audible_fraction_limit = 1e-4;
constexpr double analysis_low_hz = 50.0;

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest_header(const char* command) {
  return json{{"tool", tool_name},
              {"version", tool_version()},
              {"command", command},
              {"timestamp", timestamp_utc()}};
}

void write_manifest(const fs::path& path, const json& manifest) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write manifest " + path.string());
  out << manifest.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::io, "write failed for manifest " + path.string());
}

std::optional<fs::path> manifest_path(const std::optional<fs::path>& explicit_path,
                                      const std::optional<fs::path>& primary_output) {
  if (explicit_path) return explicit_path;
  if (primary_output) return fs::path(primary_output->string() + ".manifest.json");
  return std::nullopt;
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  return out;
}

void close_csv(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

double to_db_ratio(double value, double reference) {
  if (reference <= 0.0 || value <= 0.0) return db_floor;
  return std::max(db_floor, 20.0 * std::log10(value / reference));
}

WavReadResult read_input(const fs::path& path, std::ostream& err) {
  WavReadResult r = read_wav_file(path);
  if (r.channels > 1) {
    err << "warning: " << path.string() << " has " << r.channels
        << " channels; using channel 0\n";
  }
  return r;
}

fs::path sibling_with_suffix(const fs::path& report, const std::string& suffix) {
  fs::path p = report;
  p.replace_extension();
  return fs::path(p.string() + suffix);
}

void write_spectrogram_csv(const Spectrogram& sg, const fs::path& path) {
  auto out = open_csv(path);
  out << "time_s\\frequency_hz";
  for (double f : sg.frequencies_hz) out << ',' << format_number(f);
  out << '\n';
  for (std::size_t t = 0; t < sg.times_s.size(); ++t) {
    out << format_number(sg.times_s[t]);
    for (double v : sg.db[t]) out << ',' << format_number(v);
    out << '\n';
  }
  close_csv(out, path);
}

// Runs `body`, mapping library failures onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const json::exception& e) {
    err << "error: manifest: " << e.what() << '\n';
    return exit_config;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  }
}

int highest_order(const std::vector<double>& gains) noexcept {
  int order = 1;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (gains[i] != 0.0) order = static_cast<int>(i) + 1;
  }
  return order;
}

json options_json(const SweepOptions& o) {
  return json{{"attenuations_db", o.attenuations_db},
              {"attack", to_json(o.attack)},
              {"model", to_json(o.model)},
              {"noise_rms", o.noise_rms},
              {"seed", o.seed},
              {"jitter", o.jitter}};
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config:
    case ErrorKind::design:
    case ErrorKind::unsupported_ratio:
      return exit_config;
    case ErrorKind::io:
    case ErrorKind::format:
    case ErrorKind::unsupported_format:
      return exit_io;
    case ErrorKind::degenerate_input:
      return exit_degenerate;
  }
  return exit_config;
}

const char* tool_version() noexcept { return USONIC_VERSION; }

std::string format_number(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

json to_json(const AttackConfig& c) {
  return json{{"baseband_cutoff_hz", c.baseband_cutoff_hz},
              {"output_rate_hz", c.output_rate_hz},
              {"carrier_hz", c.carrier_hz},
              {"modulation_depth", c.modulation_depth},
              {"output_peak", c.output_peak},
              {"fade_ms", c.fade_ms},
              {"baseband_transition_hz", c.baseband_transition_hz},
              {"baseband_attenuation_db", c.baseband_attenuation_db}};
}

json to_json(const MicModel& m) {
  return json{{"gains", m.gains},
              {"lpf_cutoff_hz", m.lpf_cutoff_hz},
              {"lpf_transition_hz", m.lpf_transition_hz},
              {"lpf_attenuation_db", m.lpf_attenuation_db},
              {"adc_rate_hz", m.adc_rate_hz},
              {"adc_bits", m.adc_bits},
              {"input_clip", m.input_clip}};
}

AttackConfig attack_config_from_json(const json& j) {
  AttackConfig c;
  c.baseband_cutoff_hz = j.at("baseband_cutoff_hz").get<double>();
  c.output_rate_hz = j.at("output_rate_hz").get<int>();
  c.carrier_hz = j.at("carrier_hz").get<double>();
  c.modulation_depth = j.at("modulation_depth").get<double>();
  c.output_peak = j.at("output_peak").get<double>();
  c.fade_ms = j.at("fade_ms").get<double>();
  c.baseband_transition_hz = j.at("baseband_transition_hz").get<double>();
  c.baseband_attenuation_db = j.at("baseband_attenuation_db").get<double>();
  return c;
}

MicModel mic_model_from_json(const json& j) {
  MicModel m;
  m.gains = j.at("gains").get<std::vector<double>>();
  m.lpf_cutoff_hz = j.at("lpf_cutoff_hz").get<double>();
  m.lpf_transition_hz = j.at("lpf_transition_hz").get<double>();
  m.lpf_attenuation_db = j.at("lpf_attenuation_db").get<double>();
  m.adc_rate_hz = j.at("adc_rate_hz").get<int>();
  m.adc_bits = j.at("adc_bits").get<int>();
  m.input_clip = j.at("input_clip").get<double>();
  return m;
}

int run_synth(const SynthOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(o.attack);
    const SampledSignal voice = read_input(o.input, err).signal;
    const SampledSignal attack = synthesize_attack(voice, o.attack);
    const WavWriteResult written = write_wav(attack, o.output, o.encoding);

    const double audible = energy_fraction_below(attack, audible_limit_hz);
    const double margin = o.attack.baseband_cutoff_hz + o.attack.baseband_transition_hz;
    const Band sidebands{std::max(0.0, o.attack.carrier_hz - margin),
                         std::min(attack.nyquist(), o.attack.carrier_hz + margin)};
    const double in_band =
        band_energy(attack, std::span<const Band>(&sidebands, 1)).front().fraction;

    out << "audible_fraction: " << format_number(audible) << '\n'
        << "out_of_band_fraction: " << format_number(1.0 - in_band) << '\n'
        << "wrote " << o.output.string() << " (" << attack.sample_rate << " Hz, "
        << to_string(o.encoding) << ", " << attack.size() << " samples)\n";

    if (auto path = manifest_path(o.manifest, o.output)) {
      json m = manifest_header("synth");
      m["config"] = {{"attack", to_json(o.attack)}, {"encoding", to_string(o.encoding)}};
      m["inputs"] = {{"input", o.input.string()}};
      m["outputs"] = {{"output", o.output.string()}, {"manifest", path->string()}};
      m["metrics"] = {{"audible_fraction", audible},
                      {"out_of_band_fraction", 1.0 - in_band},
                      {"output_peak", peak_abs(attack.samples)},
                      {"output_samples", attack.size()},
                      {"duration_s", attack.duration_s()},
                      {"clipped_samples", written.clipped_samples}};
      write_manifest(*path, m);
    }
    return audible <= audible_fraction_limit ? exit_pass : exit_metric_fail;
  });
}

int run_micsim(const MicsimOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(o.model);
    const SampledSignal input = read_input(o.input, err).signal;
    const SampledSignal noisy = add_white_noise(input, o.noise_rms, o.seed);

    const int order = highest_order(o.model.gains);
    if (order > 1) {
      const double safe_hz = noisy.nyquist() / order;
      const double above = 1.0 - energy_fraction_below(noisy, safe_hz);
      if (above > 1e-3) {
        err << "warning: " << format_number(above * 100.0) << "% of the input energy lies above "
            << format_number(safe_hz) << " Hz; order-" << order << " products will alias\n";
      }
    }

    const MicTrace trace = simulate_trace(noisy, o.model);
    const WavWriteResult written = write_wav(trace.output, o.output, o.encoding);

    std::vector<double> qerr(trace.output.size());
    for (std::size_t i = 0; i < qerr.size(); ++i) {
      qerr[i] = trace.output.samples[i] - trace.before_quantization.samples[i];
    }
    const double in_rms = rms(input.samples);
    const double out_rms = rms(trace.output.samples);
    const double out_db = to_db_ratio(out_rms, in_rms);

    out << "output_rms: " << format_number(out_rms) << " (" << format_number(out_db)
        << " dB re input)\n"
        << "quantization_rms: " << format_number(rms(qerr)) << " (step "
        << format_number(quantization_step(o.model.adc_bits)) << ")\n"
        << "wrote " << o.output.string() << " (" << trace.output.sample_rate << " Hz, "
        << to_string(o.encoding) << ")\n";

    if (auto path = manifest_path(o.manifest, o.output)) {
      json m = manifest_header("micsim");
      m["config"] = {{"model", to_json(o.model)},
                     {"noise_rms", o.noise_rms},
                     {"seed", o.seed},
                     {"encoding", to_string(o.encoding)}};
      m["inputs"] = {{"input", o.input.string()}};
      m["outputs"] = {{"output", o.output.string()}, {"manifest", path->string()}};
      m["metrics"] = {{"input_rms", in_rms},
                      {"output_rms", out_rms},
                      {"output_rms_db", out_db},
                      {"quantization_step", quantization_step(o.model.adc_bits)},
                      {"quantization_rms", rms(qerr)},
                      {"clipped_samples", written.clipped_samples}};
      write_manifest(*path, m);
    }
    return exit_pass;
  });
}

int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.window < 256 || (o.window & (o.window - 1)) != 0) {
      throw Error(ErrorKind::config, "verify: --window must be a power of two >= 256");
    }
    if (o.hop == 0 || o.hop > o.window) {
      throw Error(ErrorKind::config, "verify: --hop must be in [1, window]");
    }
    const SampledSignal original = read_input(o.original, err).signal;
    const SampledSignal recovered = read_input(o.recovered, err).signal;
    const EnvelopeConfig envelope;
    const double score = recovery_score(original, recovered, envelope);

    SpectralReport report;
    report.metrics["recovery_score"] = score;
    report.metrics["audible_fraction_original"] = energy_fraction_below(original, audible_limit_hz);
    report.metrics["audible_fraction_recovered"] = energy_fraction_below(recovered, audible_limit_hz);

    auto dominant = [&](const SampledSignal& s) {
      std::vector<Tone> tones;
      for (const Tone& t : spectrum_peaks(s, o.min_prominence_db)) {
        if (t.frequency_hz >= analysis_low_hz) tones.push_back(t);
        if (tones.size() == o.max_tones) break;
      }
      return tones;
    };
    report.tone_table = dominant(recovered);
    const std::vector<Tone> original_tones = dominant(original);

    out << "recovery_score: " << format_number(score) << '\n'
        << "audible_fraction original: " << format_number(report.metrics["audible_fraction_original"])
        << ", recovered: " << format_number(report.metrics["audible_fraction_recovered"]) << '\n';
    auto print_tones = [&](const char* name, const std::vector<Tone>& tones) {
      out << "dominant tones " << name << ':';
      for (const Tone& t : tones) {
        out << ' ' << format_number(std::round(t.frequency_hz * 10.0) / 10.0) << "Hz@"
            << format_number(t.amplitude);
      }
      out << '\n';
    };
    print_tones("original", original_tones);
    print_tones("recovered", report.tone_table);

    json outputs = json::object();
    if (o.report) {
      // Expected amplitude: the original's spectrum at the same frequency,
      // rescaled by the overall level difference between the two signals.
      const AmplitudeSpectrum reference = amplitude_spectrum(original);
      const double gain = rms(recovered.samples) / std::max(rms(original.samples), 1e-300);
      auto csv = open_csv(*o.report);
      csv << "frequency_hz,amplitude,predicted,relative_error\n";
      for (const Tone& t : report.tone_table) {
        const double predicted = gain * tone_amplitude(reference, t.frequency_hz);
        const double rel = predicted > 0.0 ? std::abs(t.amplitude - predicted) / predicted
                                           : std::abs(t.amplitude);
        csv << format_number(t.frequency_hz) << ',' << format_number(t.amplitude) << ','
            << format_number(predicted) << ',' << format_number(rel) << '\n';
      }
      close_csv(csv, *o.report);
      outputs["report"] = o.report->string();

      const std::pair<const char*, const SampledSignal*> inputs[] = {{"original", &original},
                                                                     {"recovered", &recovered}};
      for (const auto& [name, signal] : inputs) {
        if (signal->size() < o.window) {
          err << "warning: " << name << " is shorter than one spectrogram window; skipped\n";
          continue;
        }
        const fs::path path = sibling_with_suffix(*o.report, std::string(".") + name + ".spectrogram.csv");
        write_spectrogram_csv(spectrogram(*signal, o.window, o.hop), path);
        outputs[std::string(name) + "_spectrogram"] = path.string();
      }
    }

    const bool pass = score >= o.threshold;
    out << (pass ? "PASS" : "FAIL") << " (threshold " << format_number(o.threshold) << ")\n";

    if (auto path = manifest_path(o.manifest, o.report)) {
      json m = manifest_header("verify");
      m["config"] = {{"threshold", o.threshold},
                     {"window", o.window},
                     {"hop", o.hop},
                     {"min_prominence_db", o.min_prominence_db},
                     {"max_tones", o.max_tones},
                     {"envelope",
                      {{"bands", envelope.bands},
                       {"low_hz", envelope.low_hz},
                       {"high_hz", envelope.high_hz},
                       {"window_s", envelope.window_s},
                       {"hop_s", envelope.hop_s},
                       {"floor_db", envelope.floor_db},
                       {"max_lag_s", envelope.max_lag_s}}}};
      m["inputs"] = {{"original", o.original.string()}, {"recovered", o.recovered.string()}};
      outputs["manifest"] = path->string();
      m["outputs"] = outputs;
      m["metrics"] = report.metrics;
      write_manifest(*path, m);
    }
    return pass ? exit_pass : exit_metric_fail;
  });
}

std::vector<ProductRow> twotone_products(const TwotoneOptions& o) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::config, "twotone: " + msg); };
  if (!(o.f1_hz > 0.0 && o.f2_hz > 0.0)) fail("frequencies must be positive");
  if (o.rate_hz <= 0 || !(o.duration_s > 0.0)) fail("rate and duration must be positive");
  if (!std::isfinite(o.g2)) fail("g2 must be finite");
  const double nyquist = o.rate_hz / 2.0;
  const auto length = static_cast<std::size_t>(std::llround(o.rate_hz * o.duration_s));
  if (length < min_spectrum_length) fail("duration too short for analysis");
  const double bin_hz = o.rate_hz / static_cast<double>(length);
  const double hi = std::max(o.f1_hz, o.f2_hz);
  const double diff = std::abs(o.f1_hz - o.f2_hz);
  if (diff < 2.0 * bin_hz) fail("f1 and f2 must differ (the difference product would land on DC)");
  if (2.0 * hi >= nyquist) fail("second harmonic of the higher tone is above Nyquist");

  std::vector<ProductRow> rows{{"DC", 0.0, o.g2},
                               {"2f1", 2.0 * o.f1_hz, o.g2 / 2.0},
                               {"2f2", 2.0 * o.f2_hz, o.g2 / 2.0},
                               {"f1+f2", o.f1_hz + o.f2_hz, o.g2},
                               {"|f1-f2|", diff, o.g2}};
  // The linear term leaves the input tones in the output; keep products clear of them.
  for (const ProductRow& r : rows) {
    for (double f : {o.f1_hz, o.f2_hz}) {
      if (std::abs(r.frequency_hz - f) < 2.0 * bin_hz) {
        fail("product " + r.label + " coincides with an input tone");
      }
    }
  }

  const SampledSignal input = tones({o.f1_hz, o.f2_hz}, {1.0, 1.0}, o.rate_hz, length);
  MicModel model;
  model.gains = {1.0, o.g2};
  model.input_clip = 2.0;
  const AmplitudeSpectrum spectrum = amplitude_spectrum(nonlinearity(input, model));
  for (ProductRow& r : rows) {
    r.measured = tone_amplitude(spectrum, r.frequency_hz);
    if (r.predicted != 0.0) {
      r.relative_error = std::abs(r.measured - r.predicted) / std::abs(r.predicted);
      r.pass = r.relative_error <= o.tolerance;
    } else {
      r.relative_error = std::abs(r.measured);
      r.pass = r.relative_error <= 1e-6;
    }
  }
  return rows;
}

int run_twotone(const TwotoneOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = twotone_products(o);
    bool pass = true;
    for (const ProductRow& r : rows) {
      pass = pass && r.pass;
      out << r.label << " @ " << format_number(r.frequency_hz) << " Hz: measured "
          << format_number(r.measured) << ", predicted " << format_number(r.predicted)
          << ", error " << format_number(r.relative_error) << (r.pass ? "" : "  <-- FAIL") << '\n';
    }
    if (o.report) {
      auto csv = open_csv(*o.report);
      csv << "frequency_hz,amplitude,predicted,relative_error\n";
      for (const ProductRow& r : rows) {
        csv << format_number(r.frequency_hz) << ',' << format_number(r.measured) << ','
            << format_number(r.predicted) << ',' << format_number(r.relative_error) << '\n';
      }
      close_csv(csv, *o.report);
    }
    out << (pass ? "PASS" : "FAIL") << '\n';
    if (auto path = manifest_path(o.manifest, o.report)) {
      json m = manifest_header("twotone");
      m["config"] = {{"f1_hz", o.f1_hz},       {"f2_hz", o.f2_hz},
                     {"g2", o.g2},             {"rate_hz", o.rate_hz},
                     {"duration_s", o.duration_s}, {"tolerance", o.tolerance}};
      m["inputs"] = json::object();
      m["outputs"] = {{"manifest", path->string()}};
      if (o.report) m["outputs"]["report"] = o.report->string();
      json metrics = json::object();
      for (const ProductRow& r : rows) metrics[r.label] = {{"measured", r.measured}, {"relative_error", r.relative_error}};
      m["metrics"] = metrics;
      write_manifest(*path, m);
    }
    return pass ? exit_pass : exit_metric_fail;
  });
}

std::vector<SweepRow> sweep_scores(const SampledSignal& voice, const SweepOptions& o) {
  validate(o.attack);
  validate(o.model);
  if (o.attenuations_db.empty()) throw Error(ErrorKind::config, "sweep: no attenuations given");
  const SampledSignal attack = synthesize_attack(voice, o.attack);
  std::vector<SweepRow> rows;
  for (double a : o.attenuations_db) {
    if (!std::isfinite(a)) throw Error(ErrorKind::config, "sweep: attenuation must be finite");
    const SampledSignal received = add_white_noise(scaled(attack, std::pow(10.0, -a / 20.0)),
                                                   o.noise_rms, o.seed);
    rows.push_back({a, recovery_score(voice, simulate(received, o.model))});
  }
  return rows;
}

bool non_increasing(const std::vector<SweepRow>& rows, double jitter) noexcept {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].recovery_score > rows[i - 1].recovery_score + jitter) return false;
  }
  return true;
}

int run_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SampledSignal voice = read_input(o.input, err).signal;
    const auto rows = sweep_scores(voice, o);
    for (const SweepRow& r : rows) {
      out << format_number(r.attenuation_db) << " dB: " << format_number(r.recovery_score) << '\n';
    }
    const bool monotone = non_increasing(rows, o.jitter);
    if (o.report) {
      auto csv = open_csv(*o.report);
      csv << "attenuation_db,recovery_score\n";
      for (const SweepRow& r : rows) {
        csv << format_number(r.attenuation_db) << ',' << format_number(r.recovery_score) << '\n';
      }
      close_csv(csv, *o.report);
    }
    out << (monotone ? "PASS" : "FAIL") << " (non-increasing within "
        << format_number(o.jitter) << ")\n";
    if (auto path = manifest_path(o.manifest, o.report)) {
      json m = manifest_header("sweep");
      m["config"] = options_json(o);
      m["inputs"] = {{"input", o.input.string()}};
      m["outputs"] = {{"manifest", path->string()}};
      if (o.report) m["outputs"]["report"] = o.report->string();
      json scores = json::array();
      for (const SweepRow& r : rows) scores.push_back(r.recovery_score);
      m["metrics"] = {{"recovery_scores", scores}, {"non_increasing", monotone}};
      write_manifest(*path, m);
    }
    return monotone ? exit_pass : exit_metric_fail;
  });
}

int run_replay(const fs::path& manifest_file, std::ostream& out, std::ostream& err) {
  json m;
  const int parsed = guarded(err, [&] {
    std::ifstream in(manifest_file);
    if (!in) throw Error(ErrorKind::io, "cannot open manifest " + manifest_file.string());
    m = json::parse(in);
    return exit_pass;
  });
  if (parsed != exit_pass) return parsed;

  return guarded(err, [&]() -> int {
    const std::string command = m.at("command").get<std::string>();
    const json& c = m.at("config");
    const json& in = m.at("inputs");
    const json& outs = m.at("outputs");
    auto optional_path = [&](const char* key) -> std::optional<fs::path> {
      if (outs.contains(key)) return fs::path(outs.at(key).get<std::string>());
      return std::nullopt;
    };
    if (command == "synth") {
      SynthOptions o;
      o.input = in.at("input").get<std::string>();
      o.output = outs.at("output").get<std::string>();
      o.attack = attack_config_from_json(c.at("attack"));
      o.encoding = parse_wav_encoding(c.at("encoding").get<std::string>());
      o.manifest = optional_path("manifest");
      return run_synth(o, out, err);
    }
    if (command == "micsim") {
      MicsimOptions o;
      o.input = in.at("input").get<std::string>();
      o.output = outs.at("output").get<std::string>();
      o.model = mic_model_from_json(c.at("model"));
      o.noise_rms = c.at("noise_rms").get<double>();
      o.seed = c.at("seed").get<std::uint64_t>();
      o.encoding = parse_wav_encoding(c.at("encoding").get<std::string>());
      o.manifest = optional_path("manifest");
      return run_micsim(o, out, err);
    }
    if (command == "verify") {
      VerifyOptions o;
      o.original = in.at("original").get<std::string>();
      o.recovered = in.at("recovered").get<std::string>();
      o.threshold = c.at("threshold").get<double>();
      o.window = c.at("window").get<std::size_t>();
      o.hop = c.at("hop").get<std::size_t>();
      o.min_prominence_db = c.at("min_prominence_db").get<double>();
      o.max_tones = c.at("max_tones").get<std::size_t>();
      o.report = optional_path("report");
      o.manifest = optional_path("manifest");
      return run_verify(o, out, err);
    }
    if (command == "twotone") {
      TwotoneOptions o;
      o.f1_hz = c.at("f1_hz").get<double>();
      o.f2_hz = c.at("f2_hz").get<double>();
      o.g2 = c.at("g2").get<double>();
      o.rate_hz = c.at("rate_hz").get<int>();
      o.duration_s = c.at("duration_s").get<double>();
      o.tolerance = c.at("tolerance").get<double>();
      o.report = optional_path("report");
      o.manifest = optional_path("manifest");
      return run_twotone(o, out, err);
    }
    if (command == "sweep") {
      SweepOptions o;
      o.input = in.at("input").get<std::string>();
      o.attenuations_db = c.at("attenuations_db").get<std::vector<double>>();
      o.attack = attack_config_from_json(c.at("attack"));
      o.model = mic_model_from_json(c.at("model"));
      o.noise_rms = c.at("noise_rms").get<double>();
      o.seed = c.at("seed").get<std::uint64_t>();
      o.jitter = c.at("jitter").get<double>();
      o.report = optional_path("report");
      o.manifest = optional_path("manifest");
      return run_sweep(o, out, err);
    }
    throw Error(ErrorKind::config, "manifest names unknown command '" + command + "'");
  });
}

}  // namespace usonic::cli
