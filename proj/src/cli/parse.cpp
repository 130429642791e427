#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace usonic::cli {
namespace {

void add_attack_options(CLI::App& cmd, AttackConfig& a) {
  cmd.add_option("--carrier", a.carrier_hz, "Carrier frequency (Hz)")->capture_default_str();
  cmd.add_option("--rate", a.output_rate_hz, "Output sample rate (Hz)")->capture_default_str();
  cmd.add_option("--cutoff", a.baseband_cutoff_hz, "Baseband low-pass cutoff (Hz)")->capture_default_str();
  cmd.add_option("--depth", a.modulation_depth, "Modulation depth in (0, 1]")->capture_default_str();
  cmd.add_option("--peak", a.output_peak, "Output peak in (0, 1]")->capture_default_str();
  cmd.add_option("--fade-ms", a.fade_ms, "Raised-cosine fade at both ends, 0 disables")->capture_default_str();
}

void add_mic_options(CLI::App& cmd, MicModel& m) {
  cmd.add_option("--gains", m.gains, "Polynomial gains G1,G2,G3,...")->delimiter(',')->capture_default_str();
  cmd.add_option("--lpf", m.lpf_cutoff_hz, "Microphone low-pass cutoff (Hz)")->capture_default_str();
  cmd.add_option("--adc-rate", m.adc_rate_hz, "ADC sample rate (Hz)")->capture_default_str();
  cmd.add_option("--bits", m.adc_bits, "ADC word length")->capture_default_str();
  cmd.add_option("--clip", m.input_clip, "Input saturation level")->capture_default_str();
}

std::function<void(const std::string&)> encoding_setter(WavEncoding& target) {
  return [&target](const std::string& name) { target = parse_wav_encoding(name); };
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ultrasonic voice-command injection toolkit", tool_name};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  SynthOptions synth;
  std::string synth_manifest;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize an ultrasonic attack WAV from a voice WAV");
  synth_cmd->add_option("input", synth.input, "Voice WAV")->required();
  synth_cmd->add_option("output", synth.output, "Attack WAV")->required();
  add_attack_options(*synth_cmd, synth.attack);
  synth_cmd->add_option_function<std::string>("--encoding", encoding_setter(synth.encoding),
                                              "pcm16 or float32 (default float32)");
  synth_cmd->add_option("--manifest", synth_manifest, "Manifest path (default <output>.manifest.json)");

  MicsimOptions micsim;
  std::string micsim_manifest;
  auto* micsim_cmd = app.add_subcommand("micsim", "Record a WAV through the simulated non-linear microphone");
  micsim_cmd->add_option("input", micsim.input, "Input WAV")->required();
  micsim_cmd->add_option("output", micsim.output, "Recorded WAV")->required();
  add_mic_options(*micsim_cmd, micsim.model);
  micsim_cmd->add_option("--noise", micsim.noise_rms, "White-noise RMS added before the microphone")->capture_default_str();
  micsim_cmd->add_option("--seed", micsim.seed, "Noise seed")->capture_default_str();
  micsim_cmd->add_option_function<std::string>("--encoding", encoding_setter(micsim.encoding),
                                               "pcm16 or float32 (default float32)");
  micsim_cmd->add_option("--manifest", micsim_manifest, "Manifest path (default <output>.manifest.json)");

  VerifyOptions verify;
  std::string verify_report, verify_manifest;
  auto* verify_cmd = app.add_subcommand("verify", "Score how well a recording reproduces the original voice");
  verify_cmd->add_option("original", verify.original, "Original voice WAV")->required();
  verify_cmd->add_option("recovered", verify.recovered, "Recorded WAV")->required();
  verify_cmd->add_option("--report", verify_report, "Tone-table CSV; spectrogram CSVs are written beside it");
  verify_cmd->add_option("--threshold", verify.threshold, "Pass threshold for the recovery score")->capture_default_str();
  verify_cmd->add_option("--window", verify.window, "Spectrogram window (power of two)")->capture_default_str();
  verify_cmd->add_option("--hop", verify.hop, "Spectrogram hop")->capture_default_str();
  verify_cmd->add_option("--manifest", verify_manifest, "Manifest path (default <report>.manifest.json)");

  TwotoneOptions twotone;
  std::string twotone_report, twotone_manifest;
  auto* twotone_cmd = app.add_subcommand("twotone", "Check second-order products of a two-tone input");
  twotone_cmd->add_option("--f1", twotone.f1_hz, "First tone (Hz)")->capture_default_str();
  twotone_cmd->add_option("--f2", twotone.f2_hz, "Second tone (Hz)")->capture_default_str();
  twotone_cmd->add_option("--g2", twotone.g2, "Second-order gain")->capture_default_str();
  twotone_cmd->add_option("--rate", twotone.rate_hz, "Sample rate (Hz)")->capture_default_str();
  twotone_cmd->add_option("--duration", twotone.duration_s, "Signal length (s)")->capture_default_str();
  twotone_cmd->add_option("--report", twotone_report, "Tone-table CSV");
  twotone_cmd->add_option("--manifest", twotone_manifest, "Manifest path (default <report>.manifest.json)");

  SweepOptions sweep;
  std::string sweep_report, sweep_manifest;
  auto* sweep_cmd = app.add_subcommand("sweep", "Recovery score versus attack attenuation");
  sweep_cmd->add_option("input", sweep.input, "Voice WAV")->required();
  sweep_cmd->add_option("--attenuations-db", sweep.attenuations_db, "Attenuations (dB)")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--report", sweep_report, "CSV of attenuation_db,recovery_score");
  sweep_cmd->add_option("--noise", sweep.noise_rms, "Microphone noise RMS")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Noise seed")->capture_default_str();
  add_attack_options(*sweep_cmd, sweep.attack);
  sweep_cmd->add_option("--manifest", sweep_manifest, "Manifest path (default <report>.manifest.json)");

  std::string replay_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", replay_path, "Manifest JSON")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out, cli_err;
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? exit_pass : exit_config;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  }

  auto optional = [](const std::string& s) -> std::optional<fs::path> {
    if (s.empty()) return std::nullopt;
    return fs::path(s);
  };
  if (*synth_cmd) {
    synth.manifest = optional(synth_manifest);
    return run_synth(synth, out, err);
  }
  if (*micsim_cmd) {
    micsim.manifest = optional(micsim_manifest);
    return run_micsim(micsim, out, err);
  }
  if (*verify_cmd) {
    verify.report = optional(verify_report);
    verify.manifest = optional(verify_manifest);
    return run_verify(verify, out, err);
  }
  if (*twotone_cmd) {
    twotone.report = optional(twotone_report);
    twotone.manifest = optional(twotone_manifest);
    return run_twotone(twotone, out, err);
  }
  if (*sweep_cmd) {
    sweep.report = optional(sweep_report);
    sweep.manifest = optional(sweep_manifest);
    return run_sweep(sweep, out, err);
  }
  return run_replay(replay_path, out, err);
}

}  // namespace usonic::cli
