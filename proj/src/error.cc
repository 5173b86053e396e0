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

#include "melsin/error.h"

#include <string>

namespace melsin {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kDegenerateFilterbank:
      return "degenerate-filterbank";
    case ErrorCode::kCalibrationFailure:
      return "calibration-failure";
    case ErrorCode::kDegenerateCandidate:
      return "degenerate-candidate";
    case ErrorCode::kNumericFailure:
      return "numeric-failure";
    case ErrorCode::kIoError:
      return "io-error";
    case ErrorCode::kUnsupportedFormat:
      return "unsupported-format";
    case ErrorCode::kParseError:
      return "parse-error";
  }
  return "unknown";
}

DegenerateFilterbank::DegenerateFilterbank(int filter_index)
    : Error(ErrorCode::kDegenerateFilterbank,
            "mel filter " + std::to_string(filter_index) +
                " covers no FFT bin"),
      filter_index_(filter_index) {}

ParseError::ParseError(const std::string& message, std::size_t byte_offset)
    : Error(ErrorCode::kParseError,
            message + " (at byte " + std::to_string(byte_offset) + ")"),
      byte_offset_(byte_offset) {}

}  // namespace melsin
