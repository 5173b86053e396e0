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

#ifndef MELSIN_CONFIG_H_
#define MELSIN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "melsin/mel.h"
#include "melsin/stft.h"
#include "melsin/wav.h"
#include "melsin/window.h"

namespace melsin {

struct PipelineConfig {
  int sample_rate = 16000;
  int num_mels = 80;
  int window_length = 1024;
  int hop_size = 256;
  int fft_size = 1024;
  WindowKind analysis_window = WindowKind::kBlackman;
  bool normalized_window = true;
  FilterShape filter_shape = FilterShape::kTriangular;
  double fmin_hz = 0.0;
  double fmax_hz = 0.0;  // 0 means sample_rate / 2
  double f0_min_hz = 80.0;
  double f0_max_hz = 3000.0;
  double yin_threshold = 0.1;
  double continuity_tolerance = 0.06;
  double log_floor_db = kDefaultLogFloorDb;
  int griffinlim_iterations = 32;
  std::uint64_t griffinlim_seed = 0;
  int max_lag = 1024;
  SampleFormat output_format = SampleFormat::kFloat32;

  StftParams stft_params() const {
    return {window_length, hop_size, fft_size};
  }
  double effective_fmax_hz() const {
    return fmax_hz > 0.0 ? fmax_hz : sample_rate / 2.0;
  }
  // Throws InvalidArgument naming both fields of the first violated
  // constraint.
  void Validate() const;
};

// key = value lines; '#' and ';' start comments, [sections] are ignored.
// Keys are the field names above. Unknown keys throw InvalidArgument.
void ApplyConfigValue(PipelineConfig& config, const std::string& key,
                      const std::string& value);
PipelineConfig LoadConfigFile(const std::filesystem::path& path,
                              PipelineConfig base = {});

}  // namespace melsin

#endif  // MELSIN_CONFIG_H_
