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

#include "melsin/pitch.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "melsin/error.h"

namespace melsin {
namespace {

void CheckSearchRange(int sample_rate, double fmin_hz, double fmax_hz) {
  if (sample_rate <= 0) throw InvalidArgument("sample_rate must be positive");
  if (!(fmin_hz > 0.0)) {
    throw InvalidArgument("f0_min must be positive, got " +
                          std::to_string(fmin_hz));
  }
  if (!(fmin_hz < fmax_hz)) {
    throw InvalidArgument("f0_min (" + std::to_string(fmin_hz) +
                          " Hz) must be below f0_max (" +
                          std::to_string(fmax_hz) + " Hz)");
  }
  if (fmax_hz > sample_rate / 2.0) {
    throw InvalidArgument("f0_max (" + std::to_string(fmax_hz) +
                          " Hz) exceeds the Nyquist frequency");
  }
}

}  // namespace

std::size_t PitchTrack::NumVoiced() const {
  return static_cast<std::size_t>(
      std::count_if(f0_hz.begin(), f0_hz.end(),
                    [](const PitchEstimate& f) { return f.has_value(); }));
}

PitchEstimate YinFrame(std::span<const double> frame, int sample_rate,
                       double fmin_hz, double fmax_hz, double threshold) {
  CheckSearchRange(sample_rate, fmin_hz, fmax_hz);
  const std::size_t tau_min = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(sample_rate / fmax_hz)));
  const auto tau_max =
      static_cast<std::size_t>(std::floor(sample_rate / fmin_hz));
  if (frame.size() < tau_max + 2) {
    throw InvalidArgument("frame of " + std::to_string(frame.size()) +
                          " samples is too short for f0_min " +
                          std::to_string(fmin_hz) + " Hz (needs " +
                          std::to_string(tau_max + 2) + ")");
  }
  if (tau_min > tau_max) return std::nullopt;

  // Difference function over a fixed integration window, one lag beyond
  // tau_max for the parabolic refinement.
  const std::size_t integration = frame.size() - tau_max - 1;
  std::vector<double> diff(tau_max + 2, 0.0);
  for (std::size_t tau = 1; tau < diff.size(); ++tau) {
    double sum = 0.0;
    for (std::size_t j = 0; j < integration; ++j) {
      const double delta = frame[j] - frame[j + tau];
      sum += delta * delta;
    }
    diff[tau] = sum;
  }

  std::vector<double> cmnd(diff.size(), 1.0);
  double running = 0.0;
  for (std::size_t tau = 1; tau < diff.size(); ++tau) {
    running += diff[tau];
    cmnd[tau] = running > 0.0 ? diff[tau] * static_cast<double>(tau) / running
                              : 1.0;
  }

  std::size_t best = 0;
  for (std::size_t tau = tau_min; tau <= tau_max; ++tau) {
    if (cmnd[tau] < threshold) {
      while (tau + 1 <= tau_max && cmnd[tau + 1] < cmnd[tau]) ++tau;
      best = tau;
      break;
    }
  }
  if (best == 0) {
    std::size_t argmin = tau_min;
    for (std::size_t tau = tau_min + 1; tau <= tau_max; ++tau) {
      if (cmnd[tau] < cmnd[argmin]) argmin = tau;
    }
    if (!(cmnd[argmin] < 2.0 * threshold)) return std::nullopt;
    best = argmin;
  }

  double refined = static_cast<double>(best);
  const double left = diff[best - 1];
  const double centre = diff[best];
  const double right = diff[best + 1];
  const double curvature = left - 2.0 * centre + right;
  if (curvature > 0.0) {
    refined += std::clamp(0.5 * (left - right) / curvature, -1.0, 1.0);
  }
  return std::clamp(sample_rate / refined, fmin_hz, fmax_hz);
}

PitchTrack TrackPitch(const AudioBuffer& audio, int window_length,
                      int hop_size, double fmin_hz, double fmax_hz,
                      double threshold) {
  if (window_length <= 0 || hop_size <= 0 || hop_size > window_length) {
    throw InvalidArgument("pitch framing needs 0 < hop_size (" +
                          std::to_string(hop_size) + ") <= window_length (" +
                          std::to_string(window_length) + ")");
  }
  if (audio.size() < static_cast<std::size_t>(window_length)) {
    throw InvalidArgument("audio has " + std::to_string(audio.size()) +
                          " samples, shorter than one window of " +
                          std::to_string(window_length));
  }
  CheckSearchRange(audio.sample_rate(), fmin_hz, fmax_hz);

  PitchTrack track;
  track.hop_size = hop_size;
  track.window_length = window_length;
  track.sample_rate = audio.sample_rate();
  track.search_min_hz = fmin_hz;
  track.search_max_hz = fmax_hz;

  const std::size_t num_frames =
      1 + (audio.size() - static_cast<std::size_t>(window_length)) /
              static_cast<std::size_t>(hop_size);
  track.f0_hz.reserve(num_frames);
  for (std::size_t t = 0; t < num_frames; ++t) {
    const auto frame = audio.samples().subspan(
        t * static_cast<std::size_t>(hop_size),
        static_cast<std::size_t>(window_length));
    track.f0_hz.push_back(
        YinFrame(frame, audio.sample_rate(), fmin_hz, fmax_hz, threshold));
  }
  return track;
}

PitchTrack EnforceContinuity(const PitchTrack& track, double tolerance) {
  if (!(tolerance > 0.0)) {
    throw InvalidArgument("continuity tolerance must be positive");
  }
  PitchTrack out = track;
  PitchEstimate accepted;
  for (PitchEstimate& f0 : out.f0_hz) {
    if (!f0) continue;
    if (accepted && std::abs(*f0 - *accepted) / *accepted > tolerance) {
      f0 = accepted;
    } else {
      accepted = f0;
    }
  }
  return out;
}

}  // namespace melsin
