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

#ifndef MELSIN_WAV_H_
#define MELSIN_WAV_H_

#include <filesystem>

#include "melsin/audio_buffer.h"

namespace melsin {

enum class SampleFormat { kPcm16, kFloat32 };

// PCM16 or IEEE float32, mono or stereo (averaged). No resampling.
AudioBuffer ReadWav(const std::filesystem::path& path);

// Canonical 44-byte header. PCM16 clamps to [-1, 1] and rounds half away
// from zero.
void WriteWav(const std::filesystem::path& path, const AudioBuffer& audio,
              SampleFormat format);

}  // namespace melsin

#endif  // MELSIN_WAV_H_
