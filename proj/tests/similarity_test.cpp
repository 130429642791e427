#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "usonic/error.hpp"
#include "usonic/generators.hpp"
#include "usonic/micsim.hpp"
#include "usonic/resample.hpp"
#include "usonic/similarity.hpp"
#include "usonic/synth.hpp"

namespace usonic {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no usonic::Error thrown";
  return ErrorKind::io;
}

std::vector<SampledSignal> corpus() {
  return {linear_chirp(300, 3000, 1.0, 48000), harmonic_complex(200, 3, 1.0, 48000),
          speech_shaped_noise(1.0, 48000, 1), speech_shaped_noise(1.0, 48000, 2)};
}

TEST(MelScale, RoundTrip) {
  for (double hz : {0.0, 50.0, 1000.0, 8000.0}) EXPECT_NEAR(mel_to_hz(hz_to_mel(hz)), hz, 1e-9);
  EXPECT_NEAR(hz_to_mel(1000), 1000, 0.1);
}

TEST(Envelope, Shape) {
  const auto env = mel_log_envelope(linear_chirp(300, 3000, 1.0, 48000));
  EXPECT_EQ(env.bands, 40u);
  EXPECT_EQ(env.frames, 1 + (48000 - 1200) / 480);
  EXPECT_EQ(env.values.size(), env.frames * env.bands);
  for (double v : env.values) ASSERT_TRUE(std::isfinite(v));
}

TEST(Score, SelfSimilarity) {
  for (const auto& s : corpus()) EXPECT_NEAR(recovery_score(s, s), 1.0, 1e-9);
}

TEST(Score, GainAndDcInvariance) {
  for (const auto& s : corpus()) {
    for (double a : {0.01, 0.5, 3.0}) {
      SampledSignal t = scaled(s, a);
      for (double& v : t.samples) v += 0.01;
      EXPECT_NEAR(recovery_score(s, t), 1.0, 1e-6) << a;
    }
  }
}

TEST(Score, SymmetricAndBounded) {
  const auto c = corpus();
  const auto noisy = add_white_noise(c[0], 0.05, 3);
  std::vector<SampledSignal> all = c;
  all.push_back(noisy);
  all.push_back(white_noise(48000, 0.1, 48000, 9));
  for (const auto& a : all) {
    for (const auto& b : all) {
      const double ab = recovery_score(a, b), ba = recovery_score(b, a);
      EXPECT_EQ(ab, ba);
      EXPECT_GE(ab, -1.0);
      EXPECT_LE(ab, 1.0);
    }
  }
}

TEST(Score, ShiftTolerance) {
  for (const auto& s : corpus()) {
    for (std::size_t delay_ms : {10u, 30u, 50u}) {
      const std::size_t d = delay_ms * 48;
      SampledSignal shifted{std::vector<double>(s.size(), 0.0), s.sample_rate};
      std::copy(s.samples.begin(), s.samples.end() - d, shifted.samples.begin() + d);
      EXPECT_GE(recovery_score(s, shifted), 0.95) << delay_ms;
    }
  }
}

TEST(Score, DifferentRates) {
  const auto s = speech_shaped_noise(1.0, 48000, 5);
  EXPECT_GE(recovery_score(s, resample(s, 44100)), 0.98);
  EXPECT_GE(recovery_score(resample(s, 16000), s), 0.98);
}

TEST(Score, EndToEndChirp) {
  const auto chirp = linear_chirp(300, 3000, 1.0, 48000);
  EXPECT_GE(recovery_score(chirp, simulate(synthesize_attack(chirp, {}), MicModel{})), 0.9);
}

TEST(Score, UnrelatedNoiseIsLow) {
  const auto chirp = linear_chirp(300, 3000, 1.0, 48000);
  EXPECT_LT(recovery_score(chirp, white_noise(48000, 0.1, 48000, 0)), 0.5);
}

TEST(Score, Degenerate) {
  const auto s = linear_chirp(300, 3000, 1.0, 48000);
  SampledSignal z{std::vector<double>(48000, 0.0), 48000};
  EXPECT_EQ(kind_of([&] { recovery_score(s, z); }), ErrorKind::degenerate_input);
  EXPECT_EQ(kind_of([&] { recovery_score(z, s); }), ErrorKind::degenerate_input);
  EXPECT_EQ(kind_of([&] { recovery_score(s, SampledSignal{{}, 48000}); }), ErrorKind::degenerate_input);
  // shorter than one analysis window
  EXPECT_EQ(kind_of([&] { recovery_score(s, tone(440, 0.5, 48000, 600)); }), ErrorKind::degenerate_input);
}

}  // namespace
}  // namespace usonic
