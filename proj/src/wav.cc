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

#include "melsin/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "byte_io.h"
#include "melsin/error.h"

namespace melsin {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return data;
}

void Require(const internal::ByteReader& reader, std::size_t n,
             const char* what) {
  if (reader.remaining() < n) {
    throw ParseError(std::string("truncated ") + what, reader.offset());
  }
}

FormatChunk ParseFormat(internal::ByteReader& reader, std::uint32_t size) {
  const std::size_t start = reader.offset();
  if (size < 16) throw ParseError("fmt chunk shorter than 16 bytes", start);
  FormatChunk fmt;
  fmt.format = reader.U16();
  fmt.channels = reader.U16();
  fmt.sample_rate = reader.U32();
  reader.U32();  // byte rate
  fmt.block_align = reader.U16();
  fmt.bits = reader.U16();
  if (fmt.format == kFormatExtensible) {
    if (size < 40) {
      throw ParseError("extensible fmt chunk shorter than 40 bytes", start);
    }
    reader.Seek(start + 24);  // sub-format GUID starts with the format tag
    fmt.format = reader.U16();
  }
  return fmt;
}

}  // namespace

AudioBuffer ReadWav(const std::filesystem::path& path) {
  const std::string data = ReadFile(path);
  internal::ByteReader reader(data);
  Require(reader, 12, "RIFF header");
  if (reader.Bytes(4) != "RIFF") throw ParseError("missing RIFF tag", 0);
  reader.U32();
  if (reader.Bytes(4) != "WAVE") throw ParseError("missing WAVE tag", 8);

  std::optional<FormatChunk> fmt;
  std::optional<std::string_view> payload;
  std::size_t payload_offset = 0;
  while (reader.remaining() > 0 && !payload) {
    const std::size_t chunk_offset = reader.offset();
    Require(reader, 8, "chunk header");
    const std::string_view id = reader.Bytes(4);
    const std::uint32_t size = reader.U32();
    if (size > reader.remaining()) {
      throw ParseError("chunk '" + std::string(id) + "' declares " +
                           std::to_string(size) + " bytes past end of file",
                       chunk_offset);
    }
    const std::size_t body = reader.offset();
    if (id == "fmt ") {
      fmt = ParseFormat(reader, size);
    } else if (id == "data") {
      if (!fmt) throw ParseError("data chunk before fmt chunk", chunk_offset);
      payload = std::string_view(data).substr(body, size);
      payload_offset = body;
    }
    std::size_t next = body + size + (size & 1u);
    reader.Seek(std::min(next, data.size()));
  }
  if (!fmt) throw ParseError("no fmt chunk", data.size());
  if (!payload) throw ParseError("no data chunk", data.size());

  const bool pcm16 = fmt->format == kFormatPcm && fmt->bits == 16;
  const bool float32 = fmt->format == kFormatFloat && fmt->bits == 32;
  if (!pcm16 && !float32) {
    throw UnsupportedFormat("unsupported WAV encoding (format tag " +
                            std::to_string(fmt->format) + ", " +
                            std::to_string(fmt->bits) +
                            " bits); expected PCM16 or float32");
  }
  if (fmt->channels != 1 && fmt->channels != 2) {
    throw UnsupportedFormat("unsupported channel count " +
                            std::to_string(fmt->channels));
  }
  if (fmt->sample_rate == 0 || fmt->sample_rate > 0x7fffffffu) {
    throw ParseError("invalid sample rate", 24);
  }
  const std::size_t bytes_per_sample = fmt->bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
  if (payload->size() % frame_bytes != 0) {
    throw ParseError("data chunk is not a whole number of sample frames",
                     payload_offset + payload->size());
  }

  internal::ByteReader samples(*payload);
  const std::size_t num_frames = payload->size() / frame_bytes;
  std::vector<double> out(num_frames);
  for (std::size_t i = 0; i < num_frames; ++i) {
    double sum = 0.0;
    for (int c = 0; c < fmt->channels; ++c) {
      sum += pcm16 ? samples.I16() / 32768.0
                   : static_cast<double>(samples.F32());
    }
    out[i] = sum / fmt->channels;
    if (!std::isfinite(out[i])) {
      throw ParseError("non-finite sample",
                       payload_offset + i * frame_bytes);
    }
  }
  return AudioBuffer(std::move(out), static_cast<int>(fmt->sample_rate));
}

void WriteWav(const std::filesystem::path& path, const AudioBuffer& audio,
              SampleFormat format) {
  const bool pcm16 = format == SampleFormat::kPcm16;
  const std::uint16_t bits = pcm16 ? 16 : 32;
  const std::uint16_t block_align = bits / 8;
  const auto data_bytes =
      static_cast<std::uint32_t>(audio.size() * block_align);
  const auto rate = static_cast<std::uint32_t>(audio.sample_rate());

  internal::ByteWriter w;
  w.Tag("RIFF");
  w.U32(36 + data_bytes);
  w.Tag("WAVE");
  w.Tag("fmt ");
  w.U32(16);
  w.U16(pcm16 ? kFormatPcm : kFormatFloat);
  w.U16(1);
  w.U32(rate);
  w.U32(rate * block_align);
  w.U16(block_align);
  w.U16(bits);
  w.Tag("data");
  w.U32(data_bytes);
  for (double v : audio.samples()) {
    if (pcm16) {
      const double scaled = std::round(std::clamp(v, -1.0, 1.0) * 32768.0);
      w.I16(static_cast<std::int16_t>(std::min(scaled, 32767.0)));
    } else {
      w.F32(static_cast<float>(v));
    }
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace melsin
