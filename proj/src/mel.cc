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

#include "melsin/mel.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "melsin/error.h"

namespace melsin {

double HzToMel(double hz) {
  if (!(hz >= 0.0)) {
    throw InvalidArgument("frequency must be non-negative, got " +
                          std::to_string(hz));
  }
  return 2595.0 * std::log10(1.0 + hz / 700.0);
}

double MelToHz(double mel) {
  if (!(mel >= 0.0)) {
    throw InvalidArgument("mel value must be non-negative, got " +
                          std::to_string(mel));
  }
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

std::string_view FilterShapeName(FilterShape shape) {
  return shape == FilterShape::kTriangular ? "triangular" : "rectangular";
}

FilterShape ParseFilterShape(std::string_view name) {
  if (name == "triangular") return FilterShape::kTriangular;
  if (name == "rectangular") return FilterShape::kRectangular;
  throw InvalidArgument("unknown filter shape '" + std::string(name) + "'");
}

MelFilterbank BuildFilterbank(int num_mels, int fft_size, int sample_rate,
                              double fmin_hz, double fmax_hz,
                              FilterShape shape) {
  if (num_mels < 1) throw InvalidArgument("num_mels must be at least 1");
  if (sample_rate <= 0) throw InvalidArgument("sample_rate must be positive");
  if (fft_size < 2) throw InvalidArgument("fft_size must be at least 2");
  if (fmin_hz < 0.0) {
    throw InvalidArgument("fmin (" + std::to_string(fmin_hz) +
                          " Hz) must be non-negative");
  }
  if (fmax_hz > sample_rate / 2.0) {
    throw InvalidArgument("fmax (" + std::to_string(fmax_hz) +
                          " Hz) exceeds the Nyquist frequency (" +
                          std::to_string(sample_rate / 2.0) + " Hz)");
  }
  if (!(fmin_hz < fmax_hz)) {
    throw InvalidArgument("fmin (" + std::to_string(fmin_hz) +
                          " Hz) must be below fmax (" +
                          std::to_string(fmax_hz) + " Hz)");
  }

  MelFilterbank fb;
  fb.shape_ = shape;
  fb.fmin_hz_ = fmin_hz;
  fb.fmax_hz_ = fmax_hz;
  fb.sample_rate_ = sample_rate;
  fb.fft_size_ = fft_size;

  const int num_edges = num_mels + 2;
  const double mel_lo = HzToMel(fmin_hz);
  const double mel_hi = HzToMel(fmax_hz);
  const double mel_step = (mel_hi - mel_lo) / (num_edges - 1);
  fb.band_edges_hz_.resize(num_edges);
  for (int i = 0; i < num_edges; ++i) {
    fb.band_edges_hz_[i] = MelToHz(mel_lo + i * mel_step);
  }
  fb.band_edges_hz_.front() = fmin_hz;
  fb.band_edges_hz_.back() = fmax_hz;

  const int num_bins = fft_size / 2 + 1;
  const double bin_hz = static_cast<double>(sample_rate) / fft_size;
  fb.weights_ = Matrix<double>(num_mels, num_bins);
  for (int b = 0; b < num_mels; ++b) {
    const double lo = fb.band_edges_hz_[b];
    const double mid = fb.band_edges_hz_[b + 1];
    const double hi = fb.band_edges_hz_[b + 2];
    bool any_positive = false;
    for (int k = 0; k < num_bins; ++k) {
      const double f = k * bin_hz;
      double w = 0.0;
      if (shape == FilterShape::kRectangular) {
        w = (lo <= f && f < hi) ? 1.0 : 0.0;
      } else if (f > lo && f < mid) {
        w = (f - lo) / (mid - lo);
      } else if (f == mid) {
        w = 1.0;
      } else if (f > mid && f < hi) {
        w = (hi - f) / (hi - mid);
      }
      fb.weights_(b, k) = w;
      any_positive = any_positive || w > 0.0;
    }
    if (!any_positive) throw DegenerateFilterbank(b);
  }
  return fb;
}

LogMelSpectrogram LogMel(const PowerSpectrogram& power,
                         const MelFilterbank& fb, double log_floor_db) {
  if (power.num_bins() != fb.num_bins()) {
    throw InvalidArgument("power spectrogram has " +
                          std::to_string(power.num_bins()) +
                          " bins but the filterbank expects " +
                          std::to_string(fb.num_bins()));
  }
  if (power.sample_rate != fb.sample_rate() ||
      power.params.fft_size != fb.fft_size()) {
    throw InvalidArgument(
        "power spectrogram sample rate / FFT size differ from the "
        "filterbank's");
  }

  LogMelSpectrogram out{Matrix<double>(power.num_frames(), fb.num_mels()),
                        power.params, power.sample_rate, log_floor_db};
  const Matrix<double>& w = fb.weights();
  for (std::size_t t = 0; t < power.num_frames(); ++t) {
    const auto frame = power.frames.row(t);
    for (std::size_t b = 0; b < fb.num_mels(); ++b) {
      const auto row = w.row(b);
      double energy = 0.0;
      for (std::size_t k = 0; k < row.size(); ++k) energy += row[k] * frame[k];
      const double db =
          energy > 0.0 ? 10.0 * std::log10(energy) : log_floor_db;
      out.frames(t, b) = std::max(db, log_floor_db);
    }
  }
  return out;
}

}  // namespace melsin
