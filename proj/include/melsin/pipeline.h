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

#ifndef MELSIN_PIPELINE_H_
#define MELSIN_PIPELINE_H_

// File-level operations behind the command line tool. Each step reads and
// writes the same artifacts the CLI exposes so that running the steps one by
// one reproduces `roundtrip` exactly.

#include <filesystem>
#include <string>

#include "melsin/audio_buffer.h"
#include "melsin/config.h"
#include "melsin/eval.h"
#include "melsin/mel.h"
#include "melsin/pitch.h"
#include "melsin/sinres.h"

namespace melsin {

struct Analysis {
  LogMelSpectrogram logmel;
  PitchTrack pitch;
};

MelFilterbank MakeFilterbank(const PipelineConfig& config, int sample_rate);

// Log-mel spectrogram and raw (not yet continuity-repaired) pitch track.
Analysis Analyze(const AudioBuffer& audio, const PipelineConfig& config);

AudioBuffer SinusoidalReconstruction(const LogMelSpectrogram& logmel,
                                     const PitchTrack& pitch,
                                     const PipelineConfig& config);

HarmonicFrameSet SinusoidalFrames(const LogMelSpectrogram& logmel,
                                  const PitchTrack& pitch,
                                  const PipelineConfig& config);

// Mel pseudo-inverse followed by Griffin-Lim with a normalised Hann window.
AudioBuffer GriffinLimReconstruction(const LogMelSpectrogram& logmel,
                                     const PipelineConfig& config);

EvalReport EvaluatePair(const AudioBuffer& reference,
                        const AudioBuffer& candidate,
                        const PipelineConfig& config);

struct AnalyzeOutputs {
  std::filesystem::path melspec;
  std::filesystem::path pitch;
};

struct RoundtripOutputs {
  AnalyzeOutputs analysis;
  std::filesystem::path sinusoidal_wav;
  std::filesystem::path griffinlim_wav;
  std::filesystem::path eval_csv;
  EvalReport sinusoidal_report;
  EvalReport griffinlim_report;
};

// <dir>/<stem>.melspec and <dir>/<stem>.pitch.csv
AnalyzeOutputs RunAnalyze(const std::filesystem::path& input_wav,
                          const std::filesystem::path& out_dir,
                          const PipelineConfig& config);
// A non-empty `frames_csv` also receives the harmonic frame table.
void RunInvert(const std::filesystem::path& melspec,
               const std::filesystem::path& pitch_csv,
               const std::filesystem::path& output_wav,
               const PipelineConfig& config,
               const std::filesystem::path& frames_csv = {});
void RunBaseline(const std::filesystem::path& melspec,
                 const std::filesystem::path& output_wav,
                 const PipelineConfig& config);
// Analysis files plus <stem>.sin.wav, <stem>.gl.wav and <stem>.eval.csv
// (one row per reconstruction).
RoundtripOutputs RunRoundtrip(const std::filesystem::path& input_wav,
                              const std::filesystem::path& out_dir,
                              const PipelineConfig& config);
EvalReport RunEvaluate(const std::filesystem::path& reference_wav,
                       const std::filesystem::path& candidate_wav,
                       const PipelineConfig& config);

}  // namespace melsin

#endif  // MELSIN_PIPELINE_H_
