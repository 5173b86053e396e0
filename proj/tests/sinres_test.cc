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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "melsin/error.h"
#include "melsin/mel.h"
#include "melsin/pitch.h"
#include "melsin/sinres.h"
#include "melsin/stft.h"
#include "melsin/window.h"
#include "test_util.h"

namespace melsin {
namespace {

using testing::CircularDistance;
using testing::kPi;

constexpr int kRate = 16000;
const StftParams kParams{1024, 256, 1024};

MelFilterbank DefaultFilterbank() {
  return BuildFilterbank(80, 1024, kRate, 0.0, 8000.0, FilterShape::kTriangular);
}

Window AnalysisWindow() { return MakeWindow(WindowKind::kBlackman, 1024, true); }

LogMelSpectrogram Analyze(const AudioBuffer& audio, const MelFilterbank& fb) {
  return LogMel(ToPowerSpectrogram(Stft(audio, AnalysisWindow(), kParams)), fb);
}

LogMelSpectrogram FlatLogMel(std::size_t frames, double db) {
  return LogMelSpectrogram{Matrix<double>(frames, 80, db), kParams, kRate,
                           kDefaultLogFloorDb};
}

PitchTrack ConstantPitch(std::size_t frames, PitchEstimate f0) {
  PitchTrack track;
  track.f0_hz.assign(frames, f0);
  track.hop_size = 256;
  track.window_length = 1024;
  track.sample_rate = kRate;
  track.search_min_hz = 80.0;
  track.search_max_hz = 3000.0;
  return track;
}

double MedianInteriorEstimate(const LogMelSpectrogram& lm,
                              const MelFilterbank& fb, double hz,
                              const AmplitudeCalibration& calib) {
  std::vector<double> est;
  const double partial[] = {hz};
  for (std::size_t t = 1; t + 1 < lm.num_frames(); ++t) {
    est.push_back(EstimateAmplitudes(lm.frames.row(t), fb, partial, calib)[0]);
  }
  std::nth_element(est.begin(), est.begin() + est.size() / 2, est.end());
  return est[est.size() / 2];
}

TEST(HarmonicFrequenciesTest, Examples) {
  const auto a = HarmonicFrequencies(440.0, kRate);
  ASSERT_EQ(a.size(), 18u);
  EXPECT_DOUBLE_EQ(a.back(), 7920.0);
  EXPECT_EQ(HarmonicFrequencies(2100.0, kRate),
            (std::vector<double>{2100.0, 4200.0, 6300.0}));
  EXPECT_EQ(HarmonicFrequencies(4000.0, kRate), std::vector<double>{4000.0});
}

TEST(HarmonicFrequenciesTest, OutOfRangeRejected) {
  EXPECT_THROW(HarmonicFrequencies(0.0, kRate), InvalidArgument);
  EXPECT_THROW(HarmonicFrequencies(8000.0, kRate), InvalidArgument);
  EXPECT_THROW(HarmonicFrequencies(-5.0, kRate), InvalidArgument);
}

TEST(EstimateAmplitudesTest, FloorInputIsNearSilent) {
  const MelFilterbank fb = DefaultFilterbank();
  const std::vector<double> frame(80, kDefaultLogFloorDb);
  const AmplitudeCalibration calib(3.0);
  const auto freqs = HarmonicFrequencies(440.0, kRate);
  for (double a : EstimateAmplitudes(frame, fb, freqs, calib)) {
    EXPECT_LE(a, 3.0 * 1e-5 + 1e-15);
    EXPECT_GE(a, 0.0);
  }
}

TEST(EstimateAmplitudesTest, SingleBandHandValue) {
  const MelFilterbank fb =
      BuildFilterbank(1, 1024, kRate, 0.0, 8000.0, FilterShape::kRectangular);
  const std::vector<double> frame = {0.0};
  const double partial[] = {1000.0};
  const auto amps = EstimateAmplitudes(frame, fb, partial, AmplitudeCalibration(2.0));
  ASSERT_EQ(amps.size(), 1u);
  EXPECT_DOUBLE_EQ(amps[0], 2.0);
}

TEST(EstimateAmplitudesTest, SharedBandSplitsPowerEqually) {
  const MelFilterbank fb =
      BuildFilterbank(1, 1024, kRate, 0.0, 8000.0, FilterShape::kRectangular);
  const std::vector<double> frame = {0.0};
  const double partials[] = {1000.0, 2000.0, 3000.0, 4000.0};
  for (double a : EstimateAmplitudes(frame, fb, partials, AmplitudeCalibration(1.0))) {
    EXPECT_DOUBLE_EQ(a, 0.5);  // sqrt(1 / 4)
  }
}

TEST(EstimateAmplitudesTest, OverlappingBandsAreAveraged) {
  const MelFilterbank fb =
      BuildFilterbank(3, 1024, kRate, 0.0, 8000.0, FilterShape::kRectangular);
  // A partial between edge 2 and edge 3 lies in bands 1 and 2 only.
  const double f = 0.5 * (fb.band_edges_hz()[2] + fb.band_edges_hz()[3]);
  const std::vector<double> frame = {-100.0, 0.0, 20.0};
  const double partial[] = {f};
  const auto amps = EstimateAmplitudes(frame, fb, partial, AmplitudeCalibration(1.0));
  EXPECT_NEAR(amps[0], 0.5 * (1.0 + 10.0), 1e-12);
}

TEST(EstimateAmplitudesTest, TwentyDecibelsIsTenTimesTheAmplitude) {
  const MelFilterbank fb = DefaultFilterbank();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> db(-60.0, 0.0);
  std::vector<double> frame(80);
  for (double& v : frame) v = db(rng);
  std::vector<double> louder = frame;
  for (double& v : louder) v += 20.0;
  const auto freqs = HarmonicFrequencies(220.0, kRate);
  const AmplitudeCalibration calib(1.7);
  const auto a = EstimateAmplitudes(frame, fb, freqs, calib);
  const auto b = EstimateAmplitudes(louder, fb, freqs, calib);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(b[i], 10.0 * a[i], 1e-6 * 10.0 * a[i]);
  }
}

TEST(EstimateAmplitudesTest, DimensionMismatchRejected) {
  const MelFilterbank fb = DefaultFilterbank();
  const std::vector<double> frame(79, 0.0);
  const double partial[] = {440.0};
  EXPECT_THROW(EstimateAmplitudes(frame, fb, partial, AmplitudeCalibration(1.0)),
               InvalidArgument);
}

TEST(EstimateAmplitudesTest, SineAtHalfAmplitudeAfterCalibration) {
  const MelFilterbank fb = DefaultFilterbank();
  const AmplitudeCalibration calib = Calibrate(fb, kParams, AnalysisWindow());
  const AudioBuffer tone(testing::Sine(1000.0, 0.5, kRate, 16000), kRate);
  const double est = MedianInteriorEstimate(Analyze(tone, fb), fb, 1000.0, calib);
  EXPECT_NEAR(est, 0.5, 0.05 * 0.5);
}

TEST(AmplitudeCalibrationTest, RejectsNonPositiveScale) {
  EXPECT_THROW(AmplitudeCalibration(0.0), CalibrationFailure);
  EXPECT_THROW(AmplitudeCalibration(-1.0), CalibrationFailure);
  EXPECT_THROW(AmplitudeCalibration(std::nan("")), CalibrationFailure);
}

TEST(CalibrateTest, ReferenceToneIsAFixedPoint) {
  const MelFilterbank fb = DefaultFilterbank();
  const AmplitudeCalibration calib = Calibrate(fb, kParams, AnalysisWindow());
  EXPECT_GT(calib.scale(), 0.0);
  const double ref = fb.center_hz(40);
  std::vector<double> tone(1024 + 8 * 256);
  for (std::size_t n = 0; n < tone.size(); ++n) {
    tone[n] = std::cos(2.0 * kPi * ref * n / kRate);
  }
  const double est =
      MedianInteriorEstimate(Analyze(AudioBuffer(tone, kRate), fb), fb, ref, calib);
  EXPECT_NEAR(est, 1.0, 1e-6);
}

TEST(CalibrateTest, ScaleInvariantToReferenceBandCenter) {
  const MelFilterbank fb = DefaultFilterbank();
  const double baseline = Calibrate(fb, kParams, AnalysisWindow()).scale();
  for (std::size_t b = 0; b < fb.num_mels(); ++b) {
    const double center = fb.center_hz(b);
    if (center < 500.0 || center > 4000.0) continue;
    const double scale = Calibrate(fb, kParams, AnalysisWindow(), center).scale();
    EXPECT_NEAR(scale / baseline, 1.0, 0.02) << "band " << b << " at " << center << " Hz";
  }
}

TEST(CalibrateTest, ReferenceOutsideRangeRejected) {
  const MelFilterbank fb = DefaultFilterbank();
  EXPECT_THROW(Calibrate(fb, kParams, AnalysisWindow(), 8000.0), InvalidArgument);
}

TEST(PhaseTest, AccumulateExamples) {
  EXPECT_LT(CircularDistance(AccumulatePhase(0.0, 1000.0, 1000.0, 0.016), 0.0), 1e-9);
  EXPECT_NEAR(AccumulatePhase(kPi / 2, 0.0, 0.0, 0.016), kPi / 2, 1e-12);
  EXPECT_NEAR(AccumulatePhase(0.0, 440.0, 460.0, 0.016), 0.4 * kPi, 1e-9);
}

TEST(PhaseTest, WrapRange) {
  for (double r : {-100.0, -2 * kPi, -1e-18, 0.0, 1.0, 2 * kPi, 1e6}) {
    const double w = WrapPhase(r);
    EXPECT_GE(w, 0.0);
    EXPECT_LT(w, 2 * kPi);
    EXPECT_LT(CircularDistance(w, r), 1e-6);
  }
}

TEST(PhaseTest, IterationMatchesClosedForm) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> freq(20.0, 4000.0);
  std::uniform_int_distribution<int> hop(64, 1024);
  std::uniform_int_distribution<int> count(1, 1000);
  std::uniform_real_distribution<double> start(0.0, 2 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const double f = freq(rng);
    const double t = hop(rng) / 16000.0;
    const int n = count(rng);
    const double theta0 = start(rng);
    double phase = theta0;
    for (int i = 0; i < n; ++i) phase = AccumulatePhase(phase, f, f, t);
    const double cycles = f * t * n;
    const double closed = WrapPhase(theta0 + 2 * kPi * (cycles - std::floor(cycles)));
    EXPECT_LT(CircularDistance(phase, closed), 1e-9);
  }
}

TEST(BuildFramesTest, UnvoicedTrackHasNoPartials) {
  const MelFilterbank fb = DefaultFilterbank();
  const HarmonicFrameSet set = BuildFrames(FlatLogMel(10, -20.0),
                                           ConstantPitch(10, std::nullopt), fb,
                                           AmplitudeCalibration(1.0));
  ASSERT_EQ(set.frames.size(), 10u);
  for (const HarmonicFrame& f : set.frames) EXPECT_EQ(f.num_partials(), 0u);
}

TEST(BuildFramesTest, ConstantPitchPhaseClosedForm) {
  const MelFilterbank fb = DefaultFilterbank();
  const HarmonicFrameSet set = BuildFrames(FlatLogMel(59, -20.0),
                                           ConstantPitch(59, 440.0), fb,
                                           AmplitudeCalibration(1.0));
  ASSERT_EQ(set.frames.size(), 59u);
  EXPECT_EQ(set.hop_size, 256);
  for (std::size_t n = 0; n < 59; ++n) {
    const HarmonicFrame& f = set.frames[n];
    ASSERT_EQ(f.num_partials(), 18u);
    ASSERT_EQ(f.partial_amps.size(), 18u);
    ASSERT_EQ(f.partial_phases_rad.size(), 18u);
    for (std::size_t i = 0; i < 18; ++i) {
      EXPECT_NEAR(f.partial_freqs_hz[i], (i + 1) * 440.0, 1e-9 * (i + 1) * 440.0);
      const double expected =
          2 * kPi * (i + 1) * 440.0 * static_cast<double>(n) * 256.0 / 16000.0;
      EXPECT_LT(CircularDistance(f.partial_phases_rad[i], expected), 1e-9);
      EXPECT_GE(f.partial_phases_rad[i], 0.0);
      EXPECT_LT(f.partial_phases_rad[i], 2 * kPi);
    }
  }
}

TEST(BuildFramesTest, RisingPitchDropsPartialsAtNyquist) {
  const MelFilterbank fb = DefaultFilterbank();
  PitchTrack track = ConstantPitch(27, std::nullopt);
  for (std::size_t n = 0; n < 27; ++n) track.f0_hz[n] = 440.0 + n;
  const HarmonicFrameSet set = BuildFrames(FlatLogMel(27, -20.0), track, fb,
                                           AmplitudeCalibration(1.0));
  EXPECT_EQ(set.frames.front().num_partials(), 18u);
  EXPECT_EQ(set.frames.back().num_partials(), 17u);  // 18 * 466 > 8000
  for (std::size_t n = 1; n < 27; ++n) {
    EXPECT_LE(set.frames[n].num_partials(), set.frames[n - 1].num_partials());
  }
}

TEST(BuildFramesTest, PartialsStayBelowNyquistAndHarmonic) {
  const MelFilterbank fb = DefaultFilterbank();
  PitchTrack track = ConstantPitch(40, std::nullopt);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> f0(80.0, 3000.0);
  for (auto& f : track.f0_hz) f = f0(rng);
  const HarmonicFrameSet set = BuildFrames(FlatLogMel(40, -10.0), track, fb,
                                           AmplitudeCalibration(1.0));
  for (const HarmonicFrame& frame : set.frames) {
    for (std::size_t i = 0; i < frame.num_partials(); ++i) {
      EXPECT_LT(frame.partial_freqs_hz[i], 8000.0);
      EXPECT_NEAR(frame.partial_freqs_hz[i], (i + 1) * *frame.f0_hz,
                  1e-9 * frame.partial_freqs_hz[i]);
      EXPECT_TRUE(std::isfinite(frame.partial_amps[i]));
      EXPECT_GE(frame.partial_amps[i], 0.0);
    }
  }
}

TEST(BuildFramesTest, FrameCountMismatchRejected) {
  const MelFilterbank fb = DefaultFilterbank();
  EXPECT_THROW(BuildFrames(FlatLogMel(10, -20.0), ConstantPitch(9, 440.0), fb,
                           AmplitudeCalibration(1.0)),
               InvalidArgument);
}

HarmonicFrameSet SinglePartial(std::size_t frames, double hz, double amp) {
  HarmonicFrameSet set;
  set.hop_size = 256;
  set.sample_rate = kRate;
  double phase = 0.0;
  for (std::size_t n = 0; n < frames; ++n) {
    if (n > 0) phase = AccumulatePhase(phase, hz, hz, 256.0 / kRate);
    set.frames.push_back(HarmonicFrame{hz, {hz}, {amp}, {phase}});
  }
  return set;
}

TEST(SynthesizeTest, SteadyPartialIsACosine) {
  const AudioBuffer out = Synthesize(SinglePartial(10, 1000.0, 1.0));
  ASSERT_EQ(out.size(), 2560u);
  double worst = 0.0;
  for (std::size_t k = 256; k < 2560; ++k) {
    const double ideal = std::cos(2 * kPi * 1000.0 * k / kRate);
    worst = std::max(worst, std::abs(out.samples()[k] - ideal));
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(SynthesizeTest, SilentFramesGiveZeros) {
  HarmonicFrameSet set;
  set.hop_size = 256;
  set.sample_rate = kRate;
  set.frames.resize(7);
  const AudioBuffer out = Synthesize(set);
  ASSERT_EQ(out.size(), 7u * 256u);
  for (double v : out.samples()) EXPECT_EQ(v, 0.0);
}

TEST(SynthesizeTest, EmptySetRejected) {
  HarmonicFrameSet set;
  set.hop_size = 256;
  set.sample_rate = kRate;
  EXPECT_THROW(Synthesize(set), InvalidArgument);
}

TEST(SynthesizeTest, LoudOutputIsPeakLimited) {
  const AudioBuffer out = Synthesize(SinglePartial(10, 500.0, 3.0));
  double peak = 0.0;
  for (double v : out.samples()) peak = std::max(peak, std::abs(v));
  EXPECT_NEAR(peak, 0.99, 1e-12);
}

TEST(SynthesizeTest, NoJumpBeyondSlopeBound) {
  const MelFilterbank fb = DefaultFilterbank();
  const std::vector<double> amps = {0.5, 0.3, 0.2, 0.1, 0.05};
  for (double f0 : {100.0, 440.0, 2000.0}) {
    const AudioBuffer tone = testing::HarmonicTone(f0, amps, kRate, 16000);
    const LogMelSpectrogram lm = Analyze(tone, fb);
    const PitchTrack pitch = TrackPitch(tone, 1024, 256, 80.0, 3000.0, 0.1);
    const HarmonicFrameSet set = PlanHarmonics(lm, pitch, fb);
    double f_max = 0.0;
    double amp_sum = 0.0;
    for (const HarmonicFrame& frame : set.frames) {
      double s = 0.0;
      for (std::size_t i = 0; i < frame.num_partials(); ++i) {
        f_max = std::max(f_max, frame.partial_freqs_hz[i]);
        s += frame.partial_amps[i];
      }
      amp_sum = std::max(amp_sum, s);
    }
    const AudioBuffer out = Synthesize(set);
    const double bound = 2 * kPi * f_max / kRate * amp_sum * 1.05;
    for (std::size_t k = 0; k + 1 < out.size(); ++k) {
      ASSERT_LE(std::abs(out.samples()[k + 1] - out.samples()[k]), bound)
          << "f0 " << f0 << " sample " << k;
    }
  }
}

TEST(InvertMelTest, SilenceInSilenceOut) {
  const MelFilterbank fb = DefaultFilterbank();
  const AudioBuffer silence(std::vector<double>(16000, 0.0), kRate);
  const LogMelSpectrogram lm = Analyze(silence, fb);
  const PitchTrack pitch = TrackPitch(silence, 1024, 256, 80.0, 3000.0, 0.1);
  const AudioBuffer out = InvertMel(lm, pitch, fb);
  EXPECT_EQ(out.size(), 59u * 256u);
  for (double v : out.samples()) EXPECT_EQ(v, 0.0);
}

TEST(InvertMelTest, Deterministic) {
  const MelFilterbank fb = DefaultFilterbank();
  const std::vector<double> amps = {0.5, 0.3, 0.2};
  const AudioBuffer tone = testing::HarmonicTone(330.0, amps, kRate, 16000);
  const LogMelSpectrogram lm = Analyze(tone, fb);
  const PitchTrack pitch = TrackPitch(tone, 1024, 256, 80.0, 3000.0, 0.1);
  EXPECT_EQ(InvertMel(lm, pitch, fb), InvertMel(lm, pitch, fb));
}

TEST(HarmonicDumpTest, HeaderAndRows) {
  std::ostringstream out;
  WriteHarmonicDump(out, SinglePartial(3, 1000.0, 0.5));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "frame,partial_index,freq_hz,amp,phase_rad");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

}  // namespace
}  // namespace melsin
