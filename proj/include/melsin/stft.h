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

#ifndef MELSIN_STFT_H_
#define MELSIN_STFT_H_

#include <cstddef>

#include "melsin/audio_buffer.h"
#include "melsin/fft.h"
#include "melsin/matrix.h"
#include "melsin/window.h"

namespace melsin {

struct StftParams {
  int window_length = 1024;
  int hop_size = 256;
  int fft_size = 1024;

  int num_bins() const { return fft_size / 2 + 1; }
  // Frames produced for a signal of `num_samples` samples (0 if shorter than
  // one window).
  std::size_t NumFrames(std::size_t num_samples) const;
  // Seconds from the start of the signal to the centre of frame t.
  double FrameCenterSeconds(std::size_t t, int sample_rate) const;
  // Throws InvalidArgument unless 0 < hop <= window <= fft and fft is a
  // power of two.
  void Validate() const;

  bool operator==(const StftParams&) const = default;
};

struct ComplexSpectrogram {
  Matrix<Complex> frames;  // num_frames x num_bins
  StftParams params;
  int sample_rate = 0;

  std::size_t num_frames() const { return frames.rows(); }
  std::size_t num_bins() const { return frames.cols(); }
};

struct PowerSpectrogram {
  Matrix<double> frames;  // num_frames x num_bins, entries >= 0
  StftParams params;
  int sample_rate = 0;

  std::size_t num_frames() const { return frames.rows(); }
  std::size_t num_bins() const { return frames.cols(); }
  double Total() const;
};

// Frame t covers samples [t * hop, t * hop + window_length). There is no
// centre padding; the last partial frame is dropped.
ComplexSpectrogram Stft(const AudioBuffer& audio, const Window& window,
                        int hop_size, int fft_size);
ComplexSpectrogram Stft(const AudioBuffer& audio, const Window& window,
                        const StftParams& params);

PowerSpectrogram ToPowerSpectrogram(const ComplexSpectrogram& spec);

// Weighted overlap-add inverse producing (num_frames - 1) * hop + window
// samples: each sample is sum_t w * frame_t / max(sum_t w^2, floor), where
// floor = kIstftWindowFloor * max(sum_t w^2). Away from the signal edges
// this is the least-squares inverse of Stft.
inline constexpr double kIstftWindowFloor = 1e-2;
AudioBuffer Istft(const ComplexSpectrogram& spec, const Window& window);

}  // namespace melsin

#endif  // MELSIN_STFT_H_
