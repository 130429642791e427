#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "oracle.hpp"
#include "usonic/generators.hpp"
#include "usonic/micsim.hpp"
#include "usonic/similarity.hpp"
#include "usonic/wav.hpp"

namespace usonic::cli {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "usonic");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

json load_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::vector<std::vector<std::string>> load_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    write_wav(linear_chirp(300, 3000, 1.0, 48000), path("chirp.wav"), WavEncoding::pcm16);
    write_wav(white_noise(48000, 0.1, 48000, 0), path("noise.wav"), WavEncoding::pcm16);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  oracle::TempDir dir_{"cli"};
};

TEST_F(Cli, SynthDefaults) {
  const auto r = invoke({"synth", path("chirp.wav"), path("attack.wav")});
  ASSERT_EQ(r.code, exit_pass) << r.err;
  const auto w = read_wav_file(path("attack.wav"));
  EXPECT_EQ(w.signal.sample_rate, 192000);
  EXPECT_EQ(w.encoding, WavEncoding::float32);
  const auto m = load_json(path("attack.wav") + ".manifest.json");
  EXPECT_EQ(m["command"], "synth");
  EXPECT_EQ(m["tool"], "usonic");
  EXPECT_EQ(m["config"]["attack"]["carrier_hz"].get<double>(), 30000.0);
  EXPECT_EQ(m["config"]["attack"]["output_rate_hz"].get<int>(), 192000);
  EXPECT_LE(m["metrics"]["audible_fraction"].get<double>(), 1e-4);
  EXPECT_NE(r.out.find("audible_fraction"), std::string::npos);
}

TEST_F(Cli, SynthConfigErrors) {
  EXPECT_EQ(invoke({"synth", path("chirp.wav"), path("a.wav"), "--carrier", "25000", "--cutoff", "8000"}).code,
            exit_config);
  EXPECT_EQ(invoke({"synth", path("chirp.wav"), path("a.wav"), "--carrier", "36000", "--rate", "96000"}).code,
            exit_config);
  EXPECT_EQ(invoke({"synth", path("chirp.wav"), path("a.wav"), "--depth", "0"}).code, exit_config);
  EXPECT_EQ(invoke({"synth", path("chirp.wav"), path("a.wav"), "--bogus"}).code, exit_config);
  EXPECT_EQ(invoke({"synth", path("chirp.wav")}).code, exit_config);
  EXPECT_EQ(invoke({"synth", path("chirp.wav"), path("a.wav"), "--encoding", "mp3"}).code, exit_config);
  EXPECT_FALSE(fs::exists(path("a.wav")));
}

TEST_F(Cli, SynthIoAndDegenerate) {
  EXPECT_EQ(invoke({"synth", path("missing.wav"), path("a.wav")}).code, exit_io);
  std::ofstream(path("junk.wav")) << "not a wav";
  EXPECT_EQ(invoke({"synth", path("junk.wav"), path("a.wav")}).code, exit_io);
  EXPECT_EQ(invoke({"synth", path("chirp.wav"), path("nodir/a.wav")}).code, exit_io);
  write_wav(SampledSignal{std::vector<double>(48000, 0.0), 48000}, path("zero.wav"), WavEncoding::pcm16);
  EXPECT_EQ(invoke({"synth", path("zero.wav"), path("a.wav")}).code, exit_degenerate);
}

TEST_F(Cli, MicsimDefaults) {
  ASSERT_EQ(invoke({"synth", path("chirp.wav"), path("attack.wav")}).code, exit_pass);
  const auto r = invoke({"micsim", path("attack.wav"), path("rec.wav")});
  ASSERT_EQ(r.code, exit_pass) << r.err;
  EXPECT_EQ(read_wav(path("rec.wav")).sample_rate, 48000);
  const auto m = load_json(path("rec.wav") + ".manifest.json");
  EXPECT_EQ(m["config"]["model"]["gains"], json::array({1.0, 0.05, 0.0}));
}

TEST_F(Cli, MicsimLinearIsSilent) {
  ASSERT_EQ(invoke({"synth", path("chirp.wav"), path("attack.wav")}).code, exit_pass);
  ASSERT_EQ(invoke({"micsim", path("attack.wav"), path("rec.wav"), "--gains", "1,0,0"}).code, exit_pass);
  const auto m = load_json(path("rec.wav") + ".manifest.json");
  EXPECT_LE(m["metrics"]["output_rms_db"].get<double>(), -60.0);
}

TEST_F(Cli, MicsimEightBitQuantizer) {
  ASSERT_EQ(invoke({"synth", path("chirp.wav"), path("attack.wav")}).code, exit_pass);
  ASSERT_EQ(invoke({"micsim", path("attack.wav"), path("rec.wav"), "--bits", "8"}).code, exit_pass);
  const auto m = load_json(path("rec.wav") + ".manifest.json");
  const double step = m["metrics"]["quantization_step"].get<double>();
  EXPECT_DOUBLE_EQ(step, 1.0 / 128);
  // uniform rounding error has RMS step / sqrt(12)
  EXPECT_NEAR(m["metrics"]["quantization_rms"].get<double>(), step / std::sqrt(12.0), 0.2 * step / std::sqrt(12.0));
  const auto rec = read_wav(path("rec.wav"));
  for (double v : rec.samples) ASSERT_NEAR(v / step, std::round(v / step), 1e-6);
}

TEST_F(Cli, MicsimErrors) {
  EXPECT_EQ(invoke({"micsim", path("chirp.wav"), path("r.wav"), "--gains", "0,1"}).code, exit_config);
  EXPECT_EQ(invoke({"micsim", path("chirp.wav"), path("r.wav"), "--bits", "4"}).code, exit_config);
  EXPECT_EQ(invoke({"micsim", path("chirp.wav"), path("r.wav"), "--lpf", "30000"}).code, exit_config);
  // the 20 kHz microphone band needs at least a 40 kHz input
  write_wav(linear_chirp(300, 3000, 0.5, 32000), path("low.wav"), WavEncoding::pcm16);
  EXPECT_EQ(invoke({"micsim", path("low.wav"), path("r.wav")}).code, exit_config);
  EXPECT_EQ(invoke({"micsim", path("chirp.wav"), path("r.wav")}).code, exit_pass);
  EXPECT_EQ(invoke({"micsim", path("gone.wav"), path("r.wav")}).code, exit_io);
}

TEST_F(Cli, VerifyIdentity) {
  const auto r = invoke({"verify", path("chirp.wav"), path("chirp.wav"), "--report", path("v.csv")});
  ASSERT_EQ(r.code, exit_pass) << r.err;
  EXPECT_NE(r.out.find("recovery_score: 1"), std::string::npos) << r.out;
  const auto m = load_json(path("v.csv") + ".manifest.json");
  EXPECT_NEAR(m["metrics"]["recovery_score"].get<double>(), 1.0, 1e-9);
}

TEST_F(Cli, VerifyEndToEnd) {
  ASSERT_EQ(invoke({"synth", path("chirp.wav"), path("attack.wav")}).code, exit_pass);
  ASSERT_EQ(invoke({"micsim", path("attack.wav"), path("rec.wav")}).code, exit_pass);
  const auto r = invoke({"verify", path("chirp.wav"), path("rec.wav"), "--report", path("v.csv")});
  EXPECT_EQ(r.code, exit_pass) << r.out;
  EXPECT_GE(load_json(path("v.csv") + ".manifest.json")["metrics"]["recovery_score"].get<double>(), 0.9);

  const auto tones = load_csv(path("v.csv"));
  ASSERT_GE(tones.size(), 2u);
  EXPECT_EQ(tones[0], (std::vector<std::string>{"frequency_hz", "amplitude", "predicted", "relative_error"}));
  for (std::size_t i = 1; i < tones.size(); ++i) ASSERT_EQ(tones[i].size(), 4u);

  for (const char* which : {"original", "recovered"}) {
    const auto sg = load_csv(path("v.") + which + ".spectrogram.csv");
    ASSERT_GE(sg.size(), 2u) << which;
    EXPECT_EQ(sg[0][0], "time_s\\frequency_hz");
    EXPECT_EQ(sg[0].size(), 1024u / 2 + 2);
    EXPECT_EQ(std::stod(sg[0][1]), 0.0);
    // rows are stamped at frame centres
    EXPECT_NEAR(std::stod(sg[1][0]), 512.0 / 48000, 1e-9);
    EXPECT_NEAR(std::stod(sg[2][0]) - std::stod(sg[1][0]), 256.0 / 48000, 1e-9);
    for (std::size_t i = 1; i < sg.size(); ++i) ASSERT_EQ(sg[i].size(), sg[0].size());
  }
}

TEST_F(Cli, VerifyNegativeControl) {
  const auto r = invoke({"verify", path("chirp.wav"), path("noise.wav")});
  EXPECT_EQ(r.code, exit_metric_fail);
  const auto p = r.out.find("recovery_score: ");
  ASSERT_NE(p, std::string::npos);
  EXPECT_LT(std::stod(r.out.substr(p + 16)), 0.5);
}

TEST_F(Cli, VerifyErrors) {
  EXPECT_EQ(invoke({"verify", path("chirp.wav"), path("nope.wav")}).code, exit_io);
  write_wav(SampledSignal{std::vector<double>(48000, 0.0), 48000}, path("zero.wav"), WavEncoding::pcm16);
  EXPECT_EQ(invoke({"verify", path("chirp.wav"), path("zero.wav")}).code, exit_degenerate);
  EXPECT_EQ(invoke({"verify", path("chirp.wav"), path("chirp.wav"), "--window", "1000"}).code, exit_config);
  EXPECT_EQ(invoke({"verify", path("chirp.wav"), path("chirp.wav"), "--hop", "0"}).code, exit_config);
}

TEST_F(Cli, TwotoneDefaults) {
  const auto r = invoke({"twotone", "--f1", "25000", "--f2", "30000", "--g2", "0.05", "--report", path("t.csv")});
  ASSERT_EQ(r.code, exit_pass) << r.err;
  const auto rows = load_csv(path("t.csv"));
  ASSERT_EQ(rows.size(), 6u);
  bool found = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::stod(rows[i][0]) == 5000.0) {
      found = true;
      EXPECT_DOUBLE_EQ(std::stod(rows[i][2]), 0.05);
      EXPECT_LE(std::abs(std::stod(rows[i][1]) - 0.05) / 0.05, 0.02);
    }
  }
  EXPECT_TRUE(found);
}

TEST_F(Cli, TwotoneRejectsCollisions) {
  EXPECT_EQ(invoke({"twotone", "--f1", "30000", "--f2", "30000"}).code, exit_config);
  EXPECT_EQ(invoke({"twotone", "--f1", "25000", "--f2", "50000"}).code, exit_config);   // 2f2 past Nyquist
  EXPECT_EQ(invoke({"twotone", "--f1", "10000", "--f2", "20000"}).code, exit_config);   // f2 - f1 lands on f1
  EXPECT_EQ(invoke({"twotone", "--rate", "0"}).code, exit_config);
}

TEST_F(Cli, TwotoneZeroGain) {
  TwotoneOptions o;
  o.g2 = 0;
  for (const auto& row : twotone_products(o)) {
    EXPECT_LE(row.measured, 1e-6) << row.label;
    EXPECT_TRUE(row.pass);
  }
  EXPECT_EQ(invoke({"twotone", "--g2", "0"}).code, exit_pass);
}

TEST_F(Cli, SweepMonotoneAndMatchesVerify) {
  ASSERT_EQ(invoke({"sweep", path("chirp.wav"), "--attenuations-db", "0,6,12,18,24,30,36,42,48,54,60", "--report",
                    path("s.csv")})
                .code,
            exit_pass);
  const auto rows = load_csv(path("s.csv"));
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"attenuation_db", "recovery_score"}));
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_LE(std::stod(rows[i][1]), std::stod(rows[i - 1][1]) + 0.02);

  // attenuation 0 is the synth -> micsim (same noise) -> verify score; the
  // only difference is the float32 storage of the intermediate files
  ASSERT_EQ(invoke({"synth", path("chirp.wav"), path("attack.wav")}).code, exit_pass);
  ASSERT_EQ(invoke({"micsim", path("attack.wav"), path("rec.wav"), "--noise", "1e-4", "--seed", "0"}).code, exit_pass);
  ASSERT_EQ(invoke({"verify", path("chirp.wav"), path("rec.wav"), "--report", path("v.csv")}).code, exit_pass);
  const double verify_score = load_json(path("v.csv") + ".manifest.json")["metrics"]["recovery_score"].get<double>();
  EXPECT_NEAR(std::stod(rows[1][1]), verify_score, 1e-3);
}

TEST_F(Cli, SweepBuriedInNoise) {
  SweepOptions o;
  o.attenuations_db = {120};
  const auto rows = sweep_scores(read_wav(path("chirp.wav")), o);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_LT(rows[0].recovery_score, 0.5);
}

TEST_F(Cli, SweepNonIncreasingHelper) {
  EXPECT_TRUE(non_increasing({{0, 0.9}, {6, 0.91}, {12, 0.5}}, 0.02));
  EXPECT_FALSE(non_increasing({{0, 0.9}, {6, 0.95}}, 0.02));
  EXPECT_EQ(invoke({"sweep", path("chirp.wav"), "--attenuations-db", "nan"}).code, exit_config);
}

TEST_F(Cli, DeterministicOutputs) {
  ASSERT_EQ(invoke({"synth", path("chirp.wav"), path("a1.wav")}).code, exit_pass);
  ASSERT_EQ(invoke({"synth", path("chirp.wav"), path("a2.wav")}).code, exit_pass);
  EXPECT_EQ(oracle::file_bytes(path("a1.wav")), oracle::file_bytes(path("a2.wav")));
  for (const char* name : {"r1.wav", "r2.wav"}) {
    ASSERT_EQ(invoke({"micsim", path("a1.wav"), path(name), "--noise", "1e-3", "--seed", "7"}).code, exit_pass);
  }
  EXPECT_EQ(oracle::file_bytes(path("r1.wav")), oracle::file_bytes(path("r2.wav")));
  ASSERT_EQ(invoke({"micsim", path("a1.wav"), path("r3.wav"), "--noise", "1e-3", "--seed", "8"}).code, exit_pass);
  EXPECT_NE(oracle::file_bytes(path("r1.wav")), oracle::file_bytes(path("r3.wav")));
  for (const char* name : {"v1.csv", "v2.csv"}) {
    ASSERT_EQ(invoke({"verify", path("chirp.wav"), path("r1.wav"), "--report", path(name)}).code, exit_pass);
  }
  EXPECT_EQ(oracle::file_bytes(path("v1.csv")), oracle::file_bytes(path("v2.csv")));
  EXPECT_EQ(oracle::file_bytes(path("v1.original.spectrogram.csv")),
            oracle::file_bytes(path("v2.original.spectrogram.csv")));
}

TEST_F(Cli, ManifestReplayIsBitExact) {
  ASSERT_EQ(invoke({"synth", path("chirp.wav"), path("a.wav"), "--carrier", "31000", "--depth", "0.8", "--peak",
                    "0.7", "--encoding", "pcm16"})
                .code,
            exit_pass);
  ASSERT_EQ(invoke({"micsim", path("a.wav"), path("r.wav"), "--gains", "1,0.1,0.01", "--noise", "2e-4", "--seed",
                    "3", "--bits", "12"})
                .code,
            exit_pass);
  ASSERT_EQ(invoke({"verify", path("chirp.wav"), path("r.wav"), "--report", path("v.csv"), "--threshold", "0.5"}).code,
            exit_pass);
  ASSERT_EQ(invoke({"twotone", "--f1", "23000", "--f2", "37000", "--g2", "0.1", "--report", path("t.csv")}).code,
            exit_pass);
  ASSERT_EQ(invoke({"sweep", path("chirp.wav"), "--attenuations-db", "0,20,40", "--report", path("s.csv")}).code,
            exit_pass);

  const std::vector<std::string> outputs{"a.wav", "r.wav", "v.csv", "v.recovered.spectrogram.csv", "t.csv", "s.csv"};
  std::map<std::string, std::vector<char>> before;
  for (const auto& o : outputs) before[o] = oracle::file_bytes(path(o));
  for (const auto& o : outputs) fs::remove(path(o));

  for (const char* m : {"a.wav.manifest.json", "r.wav.manifest.json", "v.csv.manifest.json", "t.csv.manifest.json",
                        "s.csv.manifest.json"}) {
    const auto r = invoke({"replay", path(m)});
    ASSERT_EQ(r.code, exit_pass) << m << r.err;
  }
  for (const auto& o : outputs) EXPECT_EQ(oracle::file_bytes(path(o)), before[o]) << o;
}

TEST_F(Cli, ReplayErrors) {
  EXPECT_EQ(invoke({"replay", path("none.json")}).code, exit_io);
  std::ofstream(path("bad.json")) << "{ not json";
  EXPECT_EQ(invoke({"replay", path("bad.json")}).code, exit_config);
  std::ofstream(path("odd.json")) << R"({"command": "dance", "config": {}, "inputs": {}, "outputs": {}})";
  EXPECT_EQ(invoke({"replay", path("odd.json")}).code, exit_config);
}

TEST_F(Cli, HelpAndVersion) {
  EXPECT_EQ(invoke({"--help"}).code, exit_pass);
  const auto v = invoke({"--version"});
  EXPECT_EQ(v.code, exit_pass);
  EXPECT_NE(v.out.find(tool_version()), std::string::npos);
  EXPECT_EQ(invoke({}).code, exit_config);
}

int status_of(const std::string& cmd) {
  const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

TEST_F(Cli, BinaryExitCodes) {
  const std::string tool = USONIC_TOOL_PATH;
  EXPECT_EQ(status_of(tool + " twotone"), 0);
  EXPECT_EQ(status_of(tool + " twotone --f1 30000 --f2 30000"), 2);
  EXPECT_EQ(status_of(tool + " synth " + path("missing.wav") + " " + path("x.wav")), 3);
  EXPECT_EQ(status_of(tool + " verify " + path("chirp.wav") + " " + path("noise.wav")), 1);
  write_wav(SampledSignal{std::vector<double>(48000, 0.0), 48000}, path("zero.wav"), WavEncoding::pcm16);
  EXPECT_EQ(status_of(tool + " synth " + path("zero.wav") + " " + path("x.wav")), 4);
}

}  // namespace
}  // namespace usonic::cli
