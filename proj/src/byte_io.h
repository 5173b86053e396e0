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

#ifndef MELSIN_SRC_BYTE_IO_H_
#define MELSIN_SRC_BYTE_IO_H_

// Little-endian encoding helpers shared by the WAV and melspec codecs.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace melsin::internal {

class ByteWriter {
 public:
  void Tag(std::string_view tag) { bytes_.insert(bytes_.end(), tag.begin(), tag.end()); }
  void U16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) bytes_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void I16(std::int16_t v) { U16(static_cast<std::uint16_t>(v)); }
  void F32(float v) { U32(std::bit_cast<std::uint32_t>(v)); }

  const std::vector<char>& bytes() const { return bytes_; }

 private:
  std::vector<char> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::size_t offset() const { return offset_; }
  std::size_t remaining() const { return data_.size() - offset_; }
  void Seek(std::size_t offset) { offset_ = offset; }

  std::string_view Bytes(std::size_t n) {
    const std::string_view out = data_.substr(offset_, n);
    offset_ += n;
    return out;
  }
  std::uint16_t U16() { return static_cast<std::uint16_t>(Unsigned(2)); }
  std::uint32_t U32() { return static_cast<std::uint32_t>(Unsigned(4)); }
  std::int16_t I16() { return static_cast<std::int16_t>(U16()); }
  float F32() { return std::bit_cast<float>(U32()); }

 private:
  std::uint64_t Unsigned(int n) {
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(
               static_cast<unsigned char>(data_[offset_ + i]))
           << (8 * i);
    }
    offset_ += static_cast<std::size_t>(n);
    return v;
  }

  std::string_view data_;
  std::size_t offset_ = 0;
};

}  // namespace melsin::internal

#endif  // MELSIN_SRC_BYTE_IO_H_
