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

#ifndef MELSIN_ERROR_H_
#define MELSIN_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace melsin {

enum class ErrorCode {
  kInvalidArgument,
  kDegenerateFilterbank,
  kCalibrationFailure,
  kDegenerateCandidate,
  kNumericFailure,
  kIoError,
  kUnsupportedFormat,
  kParseError,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// command line front end can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error(ErrorCode::kInvalidArgument, message) {}
};

class DegenerateFilterbank : public Error {
 public:
  explicit DegenerateFilterbank(int filter_index);

  int filter_index() const { return filter_index_; }

 private:
  int filter_index_;
};

class CalibrationFailure : public Error {
 public:
  explicit CalibrationFailure(const std::string& message)
      : Error(ErrorCode::kCalibrationFailure, message) {}
};

class DegenerateCandidate : public Error {
 public:
  explicit DegenerateCandidate(const std::string& message)
      : Error(ErrorCode::kDegenerateCandidate, message) {}
};

class NumericFailure : public Error {
 public:
  explicit NumericFailure(const std::string& message)
      : Error(ErrorCode::kNumericFailure, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorCode::kIoError, message) {}
};

class UnsupportedFormat : public Error {
 public:
  explicit UnsupportedFormat(const std::string& message)
      : Error(ErrorCode::kUnsupportedFormat, message) {}
};

// Malformed file contents. byte_offset() is the position at which the
// reader gave up.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t byte_offset);

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

}  // namespace melsin

#endif  // MELSIN_ERROR_H_
