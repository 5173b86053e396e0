// Copyright 2026 The melsin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "melsin/error.h"
#include "melsin/pitch.h"
#include "test_util.h"

namespace melsin {
namespace {

using testing::Sine;

PitchTrack TrackOf(std::vector<PitchEstimate> values) {
  PitchTrack track;
  track.f0_hz = std::move(values);
  track.hop_size = 256;
  track.window_length = 1024;
  track.sample_rate = 16000;
  track.search_min_hz = 80.0;
  track.search_max_hz = 3000.0;
  return track;
}

TEST(YinTest, Sine440) {
  const auto frame = Sine(440.0, 0.8, 16000, 1024);
  const PitchEstimate f0 = YinFrame(frame, 16000, 80.0, 3000.0, 0.1);
  ASSERT_TRUE(f0.has_value());
  EXPECT_NEAR(*f0, 440.0, 0.005 * 440.0);
}

TEST(YinTest, Sine100LongFrame) {
  const auto frame = Sine(100.0, 0.8, 16000, 2048);
  const PitchEstimate f0 = YinFrame(frame, 16000, 80.0, 3000.0, 0.1);
  ASSERT_TRUE(f0.has_value());
  EXPECT_NEAR(*f0, 100.0, 1.0);
}

TEST(YinTest, SilenceIsUnvoiced) {
  const std::vector<double> frame(1024, 0.0);
  EXPECT_FALSE(YinFrame(frame, 16000, 80.0, 3000.0, 0.1).has_value());
}

TEST(YinTest, InvalidSearchRangeRejected) {
  const std::vector<double> frame(1024, 0.0);
  EXPECT_THROW(YinFrame(frame, 16000, 3000.0, 80.0, 0.1), InvalidArgument);
  EXPECT_THROW(YinFrame(frame, 16000, 80.0, 9000.0, 0.1), InvalidArgument);
}

TEST(YinTest, ShortFrameRejected) {
  // One period at 80 Hz is 200 samples; 201 leaves no interpolation margin.
  const std::vector<double> frame(201, 0.0);
  EXPECT_THROW(YinFrame(frame, 16000, 80.0, 3000.0, 0.1), InvalidArgument);
}

TEST(YinTest, RandomSinesWithinOnePercent) {
  std::mt19937_64 rng(1234);
  const double fmin = 80.0;
  const double fmax = 3000.0;
  std::uniform_real_distribution<double> freq(fmin * 1.1, fmax * 0.9);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * testing::kPi);
  for (int i = 0; i < 20; ++i) {
    const double f = freq(rng);
    const auto frame = Sine(f, 0.7, 16000, 1024, phase(rng));
    const PitchEstimate est = YinFrame(frame, 16000, fmin, fmax, 0.1);
    ASSERT_TRUE(est.has_value()) << f;
    EXPECT_NEAR(*est, f, 0.01 * f);
    EXPECT_GE(*est, fmin);
    EXPECT_LE(*est, fmax);
  }
}

TEST(YinTest, ResultStaysInsideSearchRange) {
  // A 60 Hz sine lies below the range and must not escape it.
  const auto frame = Sine(60.0, 0.7, 16000, 1024);
  const PitchEstimate est = YinFrame(frame, 16000, 80.0, 3000.0, 0.1);
  if (est.has_value()) {
    EXPECT_GE(*est, 80.0);
    EXPECT_LE(*est, 3000.0);
  }
}

TEST(TrackPitchTest, SteadySineOneSecond) {
  const AudioBuffer audio(Sine(440.0, 0.5, 16000, 16000), 16000);
  const PitchTrack track = TrackPitch(audio, 1024, 256, 80.0, 3000.0, 0.1);
  ASSERT_EQ(track.num_frames(), 59u);
  EXPECT_EQ(track.NumVoiced(), 59u);
  for (const PitchEstimate& f : track.f0_hz) {
    ASSERT_TRUE(f.has_value());
    EXPECT_NEAR(*f, 440.0, 0.005 * 440.0);
  }
  EXPECT_EQ(track.hop_size, 256);
  EXPECT_EQ(track.window_length, 1024);
  EXPECT_EQ(track.sample_rate, 16000);
}

TEST(TrackPitchTest, SilenceIsAllUnvoiced) {
  const AudioBuffer audio(std::vector<double>(16000, 0.0), 16000);
  const PitchTrack track = TrackPitch(audio, 1024, 256, 80.0, 3000.0, 0.1);
  ASSERT_EQ(track.num_frames(), 59u);
  EXPECT_EQ(track.NumVoiced(), 0u);
}

TEST(TrackPitchTest, ToneThenSilence) {
  std::vector<double> x = Sine(440.0, 0.5, 16000, 8000);
  x.resize(16000, 0.0);
  const PitchTrack track =
      TrackPitch(AudioBuffer(x, 16000), 1024, 256, 80.0, 3000.0, 0.1);
  ASSERT_EQ(track.num_frames(), 59u);
  // Frames entirely inside the tone: t * 256 + 1024 <= 8000.
  for (std::size_t t = 0; t * 256 + 1024 <= 8000; ++t) {
    ASSERT_TRUE(track.f0_hz[t].has_value()) << t;
    EXPECT_NEAR(*track.f0_hz[t], 440.0, 0.005 * 440.0);
  }
  // Frames entirely inside the silence.
  for (std::size_t t = 8000 / 256 + 1; t < 59; ++t) {
    EXPECT_FALSE(track.f0_hz[t].has_value()) << t;
  }
}

TEST(ContinuityTest, OutlierReplaced) {
  const PitchTrack out = EnforceContinuity(TrackOf({440.0, 470.0, 440.0}), 0.06);
  EXPECT_EQ(out.f0_hz, (std::vector<PitchEstimate>{440.0, 440.0, 440.0}));
}

TEST(ContinuityTest, SmallStepsAccepted) {
  const std::vector<PitchEstimate> in = {440.0, 460.0, 455.0};
  EXPECT_EQ(EnforceContinuity(TrackOf(in), 0.06).f0_hz, in);
}

TEST(ContinuityTest, ConstantTrackUnchanged) {
  const std::vector<PitchEstimate> in(10, 220.0);
  EXPECT_EQ(EnforceContinuity(TrackOf(in), 0.06).f0_hz, in);
}

TEST(ContinuityTest, UnvoicedFramesPassThroughWithoutResettingReference) {
  const std::vector<PitchEstimate> in = {440.0, std::nullopt, 880.0, 445.0};
  const std::vector<PitchEstimate> expected = {440.0, std::nullopt, 440.0, 445.0};
  EXPECT_EQ(EnforceContinuity(TrackOf(in), 0.06).f0_hz, expected);
}

TEST(ContinuityTest, MetadataPreserved) {
  const PitchTrack in = TrackOf({100.0, 200.0});
  const PitchTrack out = EnforceContinuity(in, 0.06);
  EXPECT_EQ(out.hop_size, in.hop_size);
  EXPECT_EQ(out.sample_rate, in.sample_rate);
  EXPECT_EQ(out.search_min_hz, in.search_min_hz);
}

TEST(ContinuityTest, NonPositiveToleranceRejected) {
  EXPECT_THROW(EnforceContinuity(TrackOf({440.0}), 0.0), InvalidArgument);
}

TEST(ContinuityTest, BoundAndIdempotenceOnRandomTracks) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> freq(80.0, 3000.0);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::bernoulli_distribution unvoiced(0.2);
  std::bernoulli_distribution jump(0.1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PitchEstimate> values;
    double f = freq(rng);
    for (int t = 0; t < 50; ++t) {
      if (jump(rng)) f = freq(rng);
      f *= 1.0 + jitter(rng);
      values.push_back(unvoiced(rng) ? PitchEstimate{} : PitchEstimate{f});
    }
    const PitchTrack once = EnforceContinuity(TrackOf(values), 0.06);
    const PitchTrack twice = EnforceContinuity(once, 0.06);
    EXPECT_EQ(once.f0_hz, twice.f0_hz);
    std::optional<double> prev;
    for (const PitchEstimate& v : once.f0_hz) {
      if (!v) continue;
      if (prev) EXPECT_LE(std::abs(*v - *prev) / *prev, 0.06);
      prev = v;
    }
  }
}

}  // namespace
}  // namespace melsin
