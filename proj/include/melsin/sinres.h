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

#ifndef MELSIN_SINRES_H_
#define MELSIN_SINRES_H_

// Harmonic sinusoidal resynthesis from a log-mel spectrogram.
//
// Each voiced frame is modelled as partials at integer multiples of f0 below
// Nyquist. Partial amplitudes are read back from the mel band energies,
// treating every band as a rectangular filter over [edge_b, edge_{b+2}):
// a band's power is shared equally by the partials inside it and a partial
// covered by two bands takes the mean of their estimates. Phases follow the
// trapezoidal recursion
//
//   theta_n = theta_{n-1} + 2 pi T (f_{n-1} + f_n) / 2,   T = hop / sr,
//
// per harmonic index, starting from zero when a partial appears.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "melsin/audio_buffer.h"
#include "melsin/mel.h"
#include "melsin/pitch.h"
#include "melsin/stft.h"
#include "melsin/window.h"

namespace melsin {

struct HarmonicFrame {
  PitchEstimate f0_hz;
  std::vector<double> partial_freqs_hz;  // (i + 1) * f0
  std::vector<double> partial_amps;
  std::vector<double> partial_phases_rad;  // in [0, 2 pi)

  std::size_t num_partials() const { return partial_freqs_hz.size(); }
};

struct HarmonicFrameSet {
  std::vector<HarmonicFrame> frames;
  int hop_size = 0;
  int sample_rate = 0;
};

// Linear amplitude per unit sqrt(mel power).
class AmplitudeCalibration {
 public:
  // Throws CalibrationFailure unless scale is finite and positive.
  explicit AmplitudeCalibration(double scale);
  double scale() const { return scale_; }

 private:
  double scale_;
};

// [f0, 2 f0, ..., L f0] with L f0 < sr / 2 strictly.
std::vector<double> HarmonicFrequencies(double f0_hz, int sample_rate);

std::vector<double> EstimateAmplitudes(std::span<const double> logmel_frame,
                                       const MelFilterbank& fb,
                                       std::span<const double> partial_freqs,
                                       const AmplitudeCalibration& calib);

// Runs a unit-amplitude sinusoid at `reference_hz` through the analysis
// chain and returns the scale that maps its median estimate back to 1.
// Without a reference the centre of band num_mels / 2 is used.
AmplitudeCalibration Calibrate(const MelFilterbank& fb,
                               const StftParams& params, const Window& window,
                               std::optional<double> reference_hz = {},
                               double log_floor_db = kDefaultLogFloorDb);

double WrapPhase(double radians);

double AccumulatePhase(double prev_phase, double f_prev_hz, double f_cur_hz,
                       double hop_seconds);

HarmonicFrameSet BuildFrames(const LogMelSpectrogram& logmel,
                             const PitchTrack& pitch, const MelFilterbank& fb,
                             const AmplitudeCalibration& calib);

// Output has num_frames * hop samples. Within frame n each partial sweeps
// linearly from its frame-n frequency and amplitude to its frame-(n+1)
// values. A partial missing from frame n + 1 keeps its frequency and fades
// to zero; one missing from frame n - 1 fades in from zero. The last frame
// holds its values. The result is scaled to a 0.99 peak only if it would
// otherwise exceed 1.
AudioBuffer Synthesize(const HarmonicFrameSet& frames);

struct InversionOptions {
  double continuity_tolerance = kDefaultContinuityTolerance;
  WindowKind analysis_window = WindowKind::kBlackman;
  bool normalized_window = true;
};

// Calibrate, EnforceContinuity, BuildFrames.
HarmonicFrameSet PlanHarmonics(const LogMelSpectrogram& logmel,
                               const PitchTrack& pitch,
                               const MelFilterbank& fb,
                               const InversionOptions& options = {});

// Synthesize(PlanHarmonics(...)).
AudioBuffer InvertMel(const LogMelSpectrogram& logmel, const PitchTrack& pitch,
                      const MelFilterbank& fb,
                      const InversionOptions& options = {});

// Diagnostic CSV: frame,partial_index,freq_hz,amp,phase_rad
void WriteHarmonicDump(std::ostream& out, const HarmonicFrameSet& frames);

}  // namespace melsin

#endif  // MELSIN_SINRES_H_
