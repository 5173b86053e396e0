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

#ifndef MELSIN_AUDIO_BUFFER_H_
#define MELSIN_AUDIO_BUFFER_H_

#include <cstddef>
#include <span>
#include <vector>

namespace melsin {

// Mono signal plus its sample rate. Construction rejects a non-positive
// rate and non-finite samples; the contents never change afterwards.
class AudioBuffer {
 public:
  AudioBuffer(std::vector<double> samples, int sample_rate);

  std::span<const double> samples() const { return samples_; }
  int sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double duration_seconds() const {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }

  bool operator==(const AudioBuffer&) const = default;

 private:
  std::vector<double> samples_;
  int sample_rate_;
};

}  // namespace melsin

#endif  // MELSIN_AUDIO_BUFFER_H_
