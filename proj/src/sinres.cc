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

#include "melsin/sinres.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "melsin/error.h"

namespace melsin {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double Median(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  if (values.size() % 2 == 1) return values[mid];
  const double upper = values[mid];
  const double lower =
      *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

void CheckFraming(const LogMelSpectrogram& logmel, const PitchTrack& pitch,
                  const MelFilterbank& fb) {
  if (logmel.num_frames() != pitch.num_frames()) {
    throw InvalidArgument("log-mel spectrogram has " +
                          std::to_string(logmel.num_frames()) +
                          " frames but the pitch track has " +
                          std::to_string(pitch.num_frames()));
  }
  if (pitch.hop_size != logmel.params.hop_size ||
      pitch.window_length != logmel.params.window_length ||
      pitch.sample_rate != logmel.sample_rate) {
    throw InvalidArgument(
        "pitch track framing (hop/window/sample rate) differs from the "
        "log-mel spectrogram's");
  }
  if (fb.num_mels() != logmel.num_mels() ||
      fb.sample_rate() != logmel.sample_rate ||
      fb.fft_size() != logmel.params.fft_size) {
    throw InvalidArgument(
        "filterbank (num_mels/sample rate/fft size) does not match the "
        "log-mel spectrogram");
  }
}

}  // namespace

AmplitudeCalibration::AmplitudeCalibration(double scale) : scale_(scale) {
  if (!std::isfinite(scale) || scale <= 0.0) {
    throw CalibrationFailure("amplitude scale must be finite and positive, "
                             "got " + std::to_string(scale));
  }
}

std::vector<double> HarmonicFrequencies(double f0_hz, int sample_rate) {
  const double nyquist = sample_rate / 2.0;
  if (!(f0_hz > 0.0) || !(f0_hz < nyquist)) {
    throw InvalidArgument("f0 " + std::to_string(f0_hz) +
                          " Hz is outside (0, " + std::to_string(nyquist) +
                          ") Hz");
  }
  std::vector<double> freqs;
  for (int i = 1; i * f0_hz < nyquist; ++i) freqs.push_back(i * f0_hz);
  return freqs;
}

std::vector<double> EstimateAmplitudes(std::span<const double> logmel_frame,
                                       const MelFilterbank& fb,
                                       std::span<const double> partial_freqs,
                                       const AmplitudeCalibration& calib) {
  if (logmel_frame.size() != fb.num_mels()) {
    throw InvalidArgument("log-mel frame has " +
                          std::to_string(logmel_frame.size()) +
                          " bands but the filterbank has " +
                          std::to_string(fb.num_mels()));
  }
  const double nyquist = fb.sample_rate() / 2.0;
  for (double f : partial_freqs) {
    if (!(f >= 0.0 && f < nyquist)) {
      throw InvalidArgument("partial frequency " + std::to_string(f) +
                            " Hz is outside [0, Nyquist)");
    }
  }

  const std::size_t num_bands = fb.num_mels();
  std::vector<int> partials_in_band(num_bands, 0);
  for (double f : partial_freqs) {
    for (std::size_t b = 0; b < num_bands; ++b) {
      if (fb.SupportContains(b, f)) ++partials_in_band[b];
    }
  }

  std::vector<double> amps(partial_freqs.size(), 0.0);
  for (std::size_t p = 0; p < partial_freqs.size(); ++p) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t b = 0; b < num_bands; ++b) {
      if (!fb.SupportContains(b, partial_freqs[p])) continue;
      const double band_power = std::pow(10.0, logmel_frame[b] / 10.0);
      sum += calib.scale() * std::sqrt(band_power / partials_in_band[b]);
      ++count;
    }
    if (count > 0) amps[p] = sum / count;
  }
  return amps;
}

AmplitudeCalibration Calibrate(const MelFilterbank& fb,
                               const StftParams& params, const Window& window,
                               std::optional<double> reference_hz,
                               double log_floor_db) {
  params.Validate();
  if (params.fft_size != fb.fft_size()) {
    throw InvalidArgument("STFT size differs from the filterbank's");
  }
  const double ref = reference_hz.value_or(fb.center_hz(fb.num_mels() / 2));
  const int sr = fb.sample_rate();
  if (!(ref > 0.0 && ref < sr / 2.0)) {
    throw InvalidArgument("calibration reference " + std::to_string(ref) +
                          " Hz is outside (0, Nyquist)");
  }

  constexpr int kReferenceFrames = 9;
  const std::size_t length =
      static_cast<std::size_t>(params.window_length) +
      static_cast<std::size_t>(kReferenceFrames - 1) * params.hop_size;
  std::vector<double> tone(length);
  for (std::size_t n = 0; n < length; ++n) {
    tone[n] = std::cos(kTwoPi * ref * static_cast<double>(n) / sr);
  }
  const LogMelSpectrogram logmel =
      LogMel(ToPowerSpectrogram(Stft(AudioBuffer(std::move(tone), sr), window,
                                     params)),
             fb, log_floor_db);

  const AmplitudeCalibration unit(1.0);
  const double partial[] = {ref};
  std::vector<double> estimates;
  for (std::size_t t = 1; t + 1 < logmel.num_frames(); ++t) {
    estimates.push_back(
        EstimateAmplitudes(logmel.frames.row(t), fb, partial, unit)[0]);
  }
  const double median = Median(std::move(estimates));
  if (!std::isfinite(median) || median <= 0.0) {
    throw CalibrationFailure("reference tone at " + std::to_string(ref) +
                             " Hz produced amplitude estimate " +
                             std::to_string(median));
  }
  return AmplitudeCalibration(1.0 / median);
}

double WrapPhase(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double AccumulatePhase(double prev_phase, double f_prev_hz, double f_cur_hz,
                       double hop_seconds) {
  // Whole cycles are dropped before scaling by 2 pi to keep the sum small.
  const double cycles = hop_seconds * 0.5 * (f_prev_hz + f_cur_hz);
  return WrapPhase(prev_phase + kTwoPi * (cycles - std::floor(cycles)));
}

HarmonicFrameSet BuildFrames(const LogMelSpectrogram& logmel,
                             const PitchTrack& pitch, const MelFilterbank& fb,
                             const AmplitudeCalibration& calib) {
  CheckFraming(logmel, pitch, fb);
  HarmonicFrameSet set;
  set.hop_size = logmel.params.hop_size;
  set.sample_rate = logmel.sample_rate;
  set.frames.resize(logmel.num_frames());
  const double hop_seconds =
      static_cast<double>(set.hop_size) / set.sample_rate;

  for (std::size_t n = 0; n < set.frames.size(); ++n) {
    HarmonicFrame& frame = set.frames[n];
    frame.f0_hz = pitch.f0_hz[n];
    if (!frame.f0_hz) continue;
    frame.partial_freqs_hz = HarmonicFrequencies(*frame.f0_hz, set.sample_rate);
    frame.partial_amps = EstimateAmplitudes(logmel.frames.row(n), fb,
                                            frame.partial_freqs_hz, calib);
    frame.partial_phases_rad.assign(frame.num_partials(), 0.0);
    if (n == 0) continue;
    const HarmonicFrame& prev = set.frames[n - 1];
    const std::size_t shared =
        std::min(prev.num_partials(), frame.num_partials());
    for (std::size_t i = 0; i < shared; ++i) {
      frame.partial_phases_rad[i] =
          AccumulatePhase(prev.partial_phases_rad[i], prev.partial_freqs_hz[i],
                          frame.partial_freqs_hz[i], hop_seconds);
    }
  }
  return set;
}

AudioBuffer Synthesize(const HarmonicFrameSet& set) {
  if (set.frames.empty()) throw InvalidArgument("no frames to synthesize");
  if (set.hop_size <= 0 || set.sample_rate <= 0) {
    throw InvalidArgument("frame set needs positive hop and sample rate");
  }
  const auto hop = static_cast<std::size_t>(set.hop_size);
  const std::size_t num_frames = set.frames.size();
  std::vector<double> out(num_frames * hop, 0.0);
  const double phase_per_hz = kTwoPi / set.sample_rate;
  const double inv_hop = 1.0 / static_cast<double>(hop);

  for (std::size_t n = 0; n < num_frames; ++n) {
    const HarmonicFrame& frame = set.frames[n];
    const std::size_t born_after =
        n > 0 ? set.frames[n - 1].num_partials() : 0;
    const bool last = n + 1 == num_frames;
    const std::size_t next_count = last ? 0 : set.frames[n + 1].num_partials();
    double* dst = out.data() + n * hop;

    for (std::size_t i = 0; i < frame.num_partials(); ++i) {
      const double f_start = frame.partial_freqs_hz[i];
      const double a_start = i < born_after ? frame.partial_amps[i] : 0.0;
      double f_end = f_start;
      double a_end = 0.0;
      if (i < next_count) {
        f_end = set.frames[n + 1].partial_freqs_hz[i];
        a_end = set.frames[n + 1].partial_amps[i];
      } else if (last) {
        a_end = frame.partial_amps[i];
      }
      const double theta = frame.partial_phases_rad[i];
      const double sweep = (f_end - f_start) * 0.5 * inv_hop;
      for (std::size_t k = 0; k < hop; ++k) {
        const double kd = static_cast<double>(k);
        const double phase = theta + phase_per_hz * kd * (f_start + sweep * kd);
        const double amp = a_start + (a_end - a_start) * kd * inv_hop;
        dst[k] += amp * std::cos(phase);
      }
    }
  }

  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  if (peak > 1.0) {
    const double gain = 0.99 / peak;
    for (double& v : out) v *= gain;
  }
  return AudioBuffer(std::move(out), set.sample_rate);
}

HarmonicFrameSet PlanHarmonics(const LogMelSpectrogram& logmel,
                               const PitchTrack& pitch,
                               const MelFilterbank& fb,
                               const InversionOptions& options) {
  const Window window =
      MakeWindow(options.analysis_window,
                 static_cast<std::size_t>(logmel.params.window_length),
                 options.normalized_window);
  const AmplitudeCalibration calib =
      Calibrate(fb, logmel.params, window, std::nullopt, logmel.log_floor_db);
  const PitchTrack repaired =
      EnforceContinuity(pitch, options.continuity_tolerance);
  return BuildFrames(logmel, repaired, fb, calib);
}

AudioBuffer InvertMel(const LogMelSpectrogram& logmel, const PitchTrack& pitch,
                      const MelFilterbank& fb,
                      const InversionOptions& options) {
  return Synthesize(PlanHarmonics(logmel, pitch, fb, options));
}

void WriteHarmonicDump(std::ostream& out, const HarmonicFrameSet& set) {
  out << "frame,partial_index,freq_hz,amp,phase_rad\n";
  const auto precision = out.precision(17);
  for (std::size_t n = 0; n < set.frames.size(); ++n) {
    const HarmonicFrame& frame = set.frames[n];
    for (std::size_t i = 0; i < frame.num_partials(); ++i) {
      out << n << ',' << i << ',' << frame.partial_freqs_hz[i] << ','
          << frame.partial_amps[i] << ',' << frame.partial_phases_rad[i]
          << '\n';
    }
  }
  out.precision(precision);
}

}  // namespace melsin
