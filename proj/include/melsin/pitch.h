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

#ifndef MELSIN_PITCH_H_
#define MELSIN_PITCH_H_

#include <optional>
#include <span>
#include <vector>

#include "melsin/audio_buffer.h"

namespace melsin {

inline constexpr double kDefaultYinThreshold = 0.1;
inline constexpr double kDefaultContinuityTolerance = 0.06;

// std::nullopt marks an unvoiced frame.
using PitchEstimate = std::optional<double>;

struct PitchTrack {
  std::vector<PitchEstimate> f0_hz;
  int hop_size = 0;
  int window_length = 0;
  int sample_rate = 0;
  double search_min_hz = 0.0;
  double search_max_hz = 0.0;

  std::size_t num_frames() const { return f0_hz.size(); }
  std::size_t NumVoiced() const;
};

// YIN on one frame. Lags run over [ceil(sr / fmax), floor(sr / fmin)]; the
// first cumulative-mean-normalised dip under `threshold` is followed down to
// its local minimum and refined by a parabola through the raw difference
// function. Without such a dip the global minimum is used when it is below
// 2 * threshold. The result is clamped to [fmin, fmax].
PitchEstimate YinFrame(std::span<const double> frame, int sample_rate,
                       double fmin_hz, double fmax_hz, double threshold);

// Runs YinFrame over exactly the frames Stft would produce.
PitchTrack TrackPitch(const AudioBuffer& audio, int window_length,
                      int hop_size, double fmin_hz, double fmax_hz,
                      double threshold);

// Forward scan: a voiced frame deviating from the last accepted voiced f0
// by more than `tolerance` (relative) is replaced by that f0. Unvoiced
// frames pass through untouched.
PitchTrack EnforceContinuity(const PitchTrack& track, double tolerance);

}  // namespace melsin

#endif  // MELSIN_PITCH_H_
