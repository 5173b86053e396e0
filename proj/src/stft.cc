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

#include "melsin/stft.h"

#include <algorithm>
#include <string>
#include <vector>

#include "melsin/error.h"

namespace melsin {

std::size_t StftParams::NumFrames(std::size_t num_samples) const {
  const auto window = static_cast<std::size_t>(window_length);
  if (num_samples < window) return 0;
  return 1 + (num_samples - window) / static_cast<std::size_t>(hop_size);
}

double StftParams::FrameCenterSeconds(std::size_t t, int sample_rate) const {
  return (static_cast<double>(t) * hop_size + window_length / 2.0) /
         sample_rate;
}

void StftParams::Validate() const {
  if (hop_size <= 0) {
    throw InvalidArgument("hop_size must be positive, got " +
                          std::to_string(hop_size));
  }
  if (hop_size > window_length) {
    throw InvalidArgument("hop_size (" + std::to_string(hop_size) +
                          ") exceeds window_length (" +
                          std::to_string(window_length) + ")");
  }
  if (window_length > fft_size) {
    throw InvalidArgument("window_length (" + std::to_string(window_length) +
                          ") exceeds fft_size (" + std::to_string(fft_size) +
                          ")");
  }
  if (!IsPowerOfTwo(static_cast<std::size_t>(fft_size))) {
    throw InvalidArgument("fft_size must be a power of two, got " +
                          std::to_string(fft_size));
  }
}

double PowerSpectrogram::Total() const {
  double total = 0.0;
  for (double v : frames.data()) total += v;
  return total;
}

ComplexSpectrogram Stft(const AudioBuffer& audio, const Window& window,
                        int hop_size, int fft_size) {
  const StftParams params{static_cast<int>(window.size()), hop_size,
                          fft_size};
  params.Validate();
  if (audio.size() < window.size()) {
    throw InvalidArgument("audio has " + std::to_string(audio.size()) +
                          " samples, shorter than one window of " +
                          std::to_string(window.size()));
  }

  const std::size_t num_frames = params.NumFrames(audio.size());
  ComplexSpectrogram spec{Matrix<Complex>(num_frames, params.num_bins()),
                          params, audio.sample_rate()};
  const auto samples = audio.samples();
  const auto w = window.coefficients();
  std::vector<double> frame(window.size());
  for (std::size_t t = 0; t < num_frames; ++t) {
    const std::size_t start = t * static_cast<std::size_t>(hop_size);
    for (std::size_t n = 0; n < frame.size(); ++n) {
      frame[n] = samples[start + n] * w[n];
    }
    const std::vector<Complex> bins =
        RealDft(frame, static_cast<std::size_t>(fft_size));
    std::copy(bins.begin(), bins.end(), spec.frames.row(t).begin());
  }
  return spec;
}

ComplexSpectrogram Stft(const AudioBuffer& audio, const Window& window,
                        const StftParams& params) {
  if (static_cast<int>(window.size()) != params.window_length) {
    throw InvalidArgument("window has " + std::to_string(window.size()) +
                          " coefficients but window_length is " +
                          std::to_string(params.window_length));
  }
  return Stft(audio, window, params.hop_size, params.fft_size);
}

PowerSpectrogram ToPowerSpectrogram(const ComplexSpectrogram& spec) {
  PowerSpectrogram power{Matrix<double>(spec.num_frames(), spec.num_bins()),
                         spec.params, spec.sample_rate};
  const auto in = spec.frames.data();
  const auto out = power.frames.data();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::norm(in[i]);
  return power;
}

AudioBuffer Istft(const ComplexSpectrogram& spec, const Window& window) {
  const StftParams& params = spec.params;
  params.Validate();
  if (static_cast<int>(window.size()) != params.window_length) {
    throw InvalidArgument("window length does not match the spectrogram");
  }
  if (spec.num_frames() == 0) return AudioBuffer({}, spec.sample_rate);

  const auto hop = static_cast<std::size_t>(params.hop_size);
  const std::size_t length = (spec.num_frames() - 1) * hop + window.size();
  std::vector<double> out(length, 0.0);
  std::vector<double> weight(length, 0.0);
  const auto w = window.coefficients();
  for (std::size_t t = 0; t < spec.num_frames(); ++t) {
    const std::vector<double> frame = InverseRealDft(
        spec.frames.row(t), static_cast<std::size_t>(params.fft_size));
    const std::size_t start = t * hop;
    for (std::size_t n = 0; n < window.size(); ++n) {
      out[start + n] += w[n] * frame[n];
      weight[start + n] += w[n] * w[n];
    }
  }
  const double peak = *std::max_element(weight.begin(), weight.end());
  const double floor = kIstftWindowFloor * peak;
  for (std::size_t i = 0; i < length; ++i) {
    const double denom = std::max(weight[i], floor);
    out[i] = denom > 0.0 ? out[i] / denom : 0.0;
  }
  return AudioBuffer(std::move(out), spec.sample_rate);
}

}  // namespace melsin
