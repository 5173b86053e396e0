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

#ifndef MELSIN_MEL_H_
#define MELSIN_MEL_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "melsin/matrix.h"
#include "melsin/stft.h"

namespace melsin {

inline constexpr double kDefaultLogFloorDb = -100.0;

// mel = 2595 * log10(1 + f / 700). Negative input throws InvalidArgument.
double HzToMel(double hz);
double MelToHz(double mel);

enum class FilterShape { kTriangular, kRectangular };

std::string_view FilterShapeName(FilterShape shape);
FilterShape ParseFilterShape(std::string_view name);

class MelFilterbank {
 public:
  std::size_t num_mels() const { return weights_.rows(); }
  std::size_t num_bins() const { return weights_.cols(); }
  const Matrix<double>& weights() const { return weights_; }
  // num_mels + 2 ascending frequencies. Band b spans edges [b, b + 2] and
  // peaks at edge b + 1.
  std::span<const double> band_edges_hz() const { return band_edges_hz_; }
  double center_hz(std::size_t band) const { return band_edges_hz_[band + 1]; }
  // Rectangular support [edge_b, edge_{b+2}) of band b.
  bool SupportContains(std::size_t band, double hz) const {
    return band_edges_hz_[band] <= hz && hz < band_edges_hz_[band + 2];
  }

  FilterShape shape() const { return shape_; }
  double fmin_hz() const { return fmin_hz_; }
  double fmax_hz() const { return fmax_hz_; }
  int sample_rate() const { return sample_rate_; }
  int fft_size() const { return fft_size_; }

 private:
  friend MelFilterbank BuildFilterbank(int, int, int, double, double,
                                       FilterShape);
  MelFilterbank() = default;

  Matrix<double> weights_;
  std::vector<double> band_edges_hz_;
  FilterShape shape_ = FilterShape::kTriangular;
  double fmin_hz_ = 0.0;
  double fmax_hz_ = 0.0;
  int sample_rate_ = 0;
  int fft_size_ = 0;
};

// Edges are equally spaced in mel between fmin and fmax. Triangular filters
// have unit peak and are sampled at bin centres k * sr / fft; rectangular
// filters are 1 on [edge_b, edge_{b+2}). Throws InvalidArgument for bad
// ranges and DegenerateFilterbank when a band covers no bin.
MelFilterbank BuildFilterbank(int num_mels, int fft_size, int sample_rate,
                              double fmin_hz, double fmax_hz,
                              FilterShape shape);

struct LogMelSpectrogram {
  Matrix<double> frames;  // num_frames x num_mels, dB
  StftParams params;
  int sample_rate = 0;
  double log_floor_db = kDefaultLogFloorDb;

  std::size_t num_frames() const { return frames.rows(); }
  std::size_t num_mels() const { return frames.cols(); }
};

// max(10 * log10(W * power), floor) per frame.
LogMelSpectrogram LogMel(const PowerSpectrogram& power,
                         const MelFilterbank& fb,
                         double log_floor_db = kDefaultLogFloorDb);

}  // namespace melsin

#endif  // MELSIN_MEL_H_
