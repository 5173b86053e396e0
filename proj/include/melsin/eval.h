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

#ifndef MELSIN_EVAL_H_
#define MELSIN_EVAL_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "melsin/audio_buffer.h"
#include "melsin/matrix.h"
#include "melsin/mel.h"
#include "melsin/stft.h"
#include "melsin/window.h"

namespace melsin {

// Lag in [-max_lag, max_lag] maximising |normalised cross-correlation|
// between reference[n] and candidate[n + lag]. Ties go to the smaller |lag|,
// then to the negative one.
int Align(const AudioBuffer& reference, const AudioBuffer& candidate,
          int max_lag);

// Shifts the candidate by -lag and truncates both to their common length.
std::pair<AudioBuffer, AudioBuffer> ApplyAlignment(
    const AudioBuffer& reference, const AudioBuffer& candidate, int lag);

// sqrt(sum ref / sum cand): the factor to apply to the candidate signal.
double EnergyNormalize(const PowerSpectrogram& ref_power,
                       const PowerSpectrogram& cand_power);

// sqrt(sum |S - S'| / (n + m)) with m frames and n bins.
double SpectralConvergence(const PowerSpectrogram& ref_power,
                           const PowerSpectrogram& cand_power);

// || |S|^(1/2) - |S'|^(1/2) ||_F / || |S|^(1/2) ||_F over magnitudes.
double RelativeSpectralConvergence(const PowerSpectrogram& ref_power,
                                   const PowerSpectrogram& cand_power);

struct EvalReport {
  double spectral_convergence = 0.0;
  double relative_spectral_convergence = 0.0;
  int alignment_lag = 0;
  double energy_scale = 1.0;
  StftParams stft_params;
};

// Align, truncate, power spectrograms with a normalised Hann window,
// rescale the candidate by EnergyNormalize, then SpectralConvergence.
EvalReport Evaluate(const AudioBuffer& reference, const AudioBuffer& candidate,
                    const StftParams& params, int max_lag);

// Ridge-regularised least-squares lift of mel power back to linear bins.
// Returns magnitudes (sqrt of the clamped power), num_frames x num_bins.
inline constexpr double kMelInverseRidge = 1e-8;
Matrix<double> MelPseudoInverse(const LogMelSpectrogram& logmel,
                                const MelFilterbank& fb);

struct GriffinLimResult {
  AudioBuffer audio;
  // Full-spectrum || |STFT(x_i)| - target ||_F after each iteration.
  std::vector<double> distance_trace;
};

GriffinLimResult GriffinLim(const Matrix<double>& magnitude,
                            const StftParams& params, const Window& window,
                            int sample_rate, int iterations,
                            std::uint64_t seed);

}  // namespace melsin

#endif  // MELSIN_EVAL_H_
