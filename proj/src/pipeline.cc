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

#include "melsin/pipeline.h"

#include <fstream>
#include <string>

#include "melsin/error.h"
#include "melsin/serialization.h"
#include "melsin/sinres.h"
#include "melsin/wav.h"

namespace melsin {
namespace {

namespace fs = std::filesystem;

// Framing stored in a melspec file takes precedence over the config.
PipelineConfig WithMelspecFraming(PipelineConfig config,
                                  const LogMelSpectrogram& logmel) {
  config.sample_rate = logmel.sample_rate;
  config.window_length = logmel.params.window_length;
  config.hop_size = logmel.params.hop_size;
  config.fft_size = logmel.params.fft_size;
  config.num_mels = static_cast<int>(logmel.num_mels());
  config.log_floor_db = logmel.log_floor_db;
  config.Validate();
  return config;
}

void EnsureParent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

std::string Stem(const fs::path& input) { return input.stem().string(); }

}  // namespace

MelFilterbank MakeFilterbank(const PipelineConfig& config, int sample_rate) {
  const double fmax =
      config.fmax_hz > 0.0 ? config.fmax_hz : sample_rate / 2.0;
  return BuildFilterbank(config.num_mels, config.fft_size, sample_rate,
                         config.fmin_hz, fmax, config.filter_shape);
}

Analysis Analyze(const AudioBuffer& audio, const PipelineConfig& config) {
  config.Validate();
  if (audio.sample_rate() != config.sample_rate) {
    throw InvalidArgument("input sample rate " +
                          std::to_string(audio.sample_rate()) +
                          " Hz differs from the configured " +
                          std::to_string(config.sample_rate) +
                          " Hz (no resampling is performed)");
  }
  const Window window =
      MakeWindow(config.analysis_window,
                 static_cast<std::size_t>(config.window_length),
                 config.normalized_window);
  const MelFilterbank fb = MakeFilterbank(config, audio.sample_rate());
  Analysis out{
      LogMel(ToPowerSpectrogram(Stft(audio, window, config.stft_params())), fb,
             config.log_floor_db),
      TrackPitch(audio, config.window_length, config.hop_size,
                 config.f0_min_hz, config.f0_max_hz, config.yin_threshold)};
  return out;
}

HarmonicFrameSet SinusoidalFrames(const LogMelSpectrogram& logmel,
                                  const PitchTrack& pitch,
                                  const PipelineConfig& config) {
  const PipelineConfig framed = WithMelspecFraming(config, logmel);
  const MelFilterbank fb = MakeFilterbank(framed, framed.sample_rate);
  InversionOptions options;
  options.continuity_tolerance = framed.continuity_tolerance;
  options.analysis_window = framed.analysis_window;
  options.normalized_window = framed.normalized_window;
  return PlanHarmonics(logmel, pitch, fb, options);
}

AudioBuffer SinusoidalReconstruction(const LogMelSpectrogram& logmel,
                                     const PitchTrack& pitch,
                                     const PipelineConfig& config) {
  return Synthesize(SinusoidalFrames(logmel, pitch, config));
}

AudioBuffer GriffinLimReconstruction(const LogMelSpectrogram& logmel,
                                     const PipelineConfig& config) {
  const PipelineConfig framed = WithMelspecFraming(config, logmel);
  const MelFilterbank fb = MakeFilterbank(framed, framed.sample_rate);
  const Window window = MakeWindow(
      WindowKind::kHann, static_cast<std::size_t>(framed.window_length), true);
  return GriffinLim(MelPseudoInverse(logmel, fb), framed.stft_params(), window,
                    framed.sample_rate, framed.griffinlim_iterations,
                    framed.griffinlim_seed)
      .audio;
}

EvalReport EvaluatePair(const AudioBuffer& reference,
                        const AudioBuffer& candidate,
                        const PipelineConfig& config) {
  return Evaluate(reference, candidate, config.stft_params(), config.max_lag);
}

AnalyzeOutputs RunAnalyze(const fs::path& input_wav, const fs::path& out_dir,
                          const PipelineConfig& config) {
  const AudioBuffer audio = ReadWav(input_wav);
  const Analysis analysis = Analyze(audio, config);
  fs::create_directories(out_dir);
  const std::string stem = Stem(input_wav);
  AnalyzeOutputs out{out_dir / (stem + ".melspec"),
                     out_dir / (stem + ".pitch.csv")};
  SaveMelspec(out.melspec, analysis.logmel);
  SavePitch(out.pitch, analysis.pitch);
  return out;
}

void RunInvert(const fs::path& melspec, const fs::path& pitch_csv,
               const fs::path& output_wav, const PipelineConfig& config,
               const fs::path& frames_csv) {
  const LogMelSpectrogram logmel = LoadMelspec(melspec);
  const PitchTrack pitch = LoadPitch(pitch_csv);
  const HarmonicFrameSet frames = SinusoidalFrames(logmel, pitch, config);
  if (!frames_csv.empty()) {
    EnsureParent(frames_csv);
    std::ofstream dump(frames_csv, std::ios::trunc);
    if (!dump) throw IoError("cannot open '" + frames_csv.string() + "'");
    WriteHarmonicDump(dump, frames);
  }
  const AudioBuffer audio = Synthesize(frames);
  EnsureParent(output_wav);
  WriteWav(output_wav, audio, config.output_format);
}

void RunBaseline(const fs::path& melspec, const fs::path& output_wav,
                 const PipelineConfig& config) {
  const LogMelSpectrogram logmel = LoadMelspec(melspec);
  const AudioBuffer audio = GriffinLimReconstruction(logmel, config);
  EnsureParent(output_wav);
  WriteWav(output_wav, audio, config.output_format);
}

RoundtripOutputs RunRoundtrip(const fs::path& input_wav,
                              const fs::path& out_dir,
                              const PipelineConfig& config) {
  RoundtripOutputs out;
  out.analysis = RunAnalyze(input_wav, out_dir, config);
  const std::string stem = Stem(input_wav);
  out.sinusoidal_wav = out_dir / (stem + ".sin.wav");
  out.griffinlim_wav = out_dir / (stem + ".gl.wav");
  out.eval_csv = out_dir / (stem + ".eval.csv");
  RunInvert(out.analysis.melspec, out.analysis.pitch, out.sinusoidal_wav,
            config);
  RunBaseline(out.analysis.melspec, out.griffinlim_wav, config);

  out.sinusoidal_report =
      RunEvaluate(input_wav, out.sinusoidal_wav, config);
  out.griffinlim_report =
      RunEvaluate(input_wav, out.griffinlim_wav, config);
  std::ofstream csv(out.eval_csv, std::ios::trunc);
  if (!csv) throw IoError("cannot open '" + out.eval_csv.string() + "'");
  csv << kEvalCsvHeader << '\n'
      << FormatEvalRow(input_wav.string(), out.sinusoidal_wav.string(),
                       out.sinusoidal_report)
      << '\n'
      << FormatEvalRow(input_wav.string(), out.griffinlim_wav.string(),
                       out.griffinlim_report)
      << '\n';
  if (!csv) throw IoError("failed writing '" + out.eval_csv.string() + "'");
  return out;
}

EvalReport RunEvaluate(const fs::path& reference_wav,
                       const fs::path& candidate_wav,
                       const PipelineConfig& config) {
  return EvaluatePair(ReadWav(reference_wav), ReadWav(candidate_wav), config);
}

}  // namespace melsin
