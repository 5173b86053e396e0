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

#include "melsin/serialization.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "byte_io.h"
#include "melsin/error.h"

namespace melsin {
namespace {

constexpr std::string_view kMelspecMagic = "MELS";
constexpr std::uint32_t kMelspecVersion = 1;
constexpr std::size_t kMelspecHeaderBytes = 4 + 7 * 4 + 4;

std::string Slurp(std::istream& in) {
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

// Splits `text` into lines, remembering where each one starts.
struct Line {
  std::string_view text;
  std::size_t offset;
};

std::vector<Line> SplitLines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back({line, pos});
    pos = end + 1;
  }
  return lines;
}

double ParseDouble(std::string_view token, std::size_t offset) {
  const std::string copy(token);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() ||
      !std::isfinite(value)) {
    throw ParseError("invalid number '" + copy + "'", offset);
  }
  return value;
}

long ParseInt(std::string_view token, std::size_t offset) {
  long value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("invalid integer '" + std::string(token) + "'", offset);
  }
  return value;
}

// Parses "#<tag> v1 key=value ..." into a map.
std::map<std::string, std::string, std::less<>> ParseHeader(
    const Line& line, std::string_view tag) {
  std::istringstream tokens{std::string(line.text)};
  std::string word;
  tokens >> word;
  if (word != "#" + std::string(tag)) {
    throw ParseError("expected '#" + std::string(tag) + "' header",
                     line.offset);
  }
  tokens >> word;
  if (word != "v1") {
    throw ParseError("unsupported " + std::string(tag) + " version '" + word +
                         "'",
                     line.offset);
  }
  std::map<std::string, std::string, std::less<>> fields;
  while (tokens >> word) {
    const std::size_t eq = word.find('=');
    if (eq == std::string::npos) {
      throw ParseError("malformed header field '" + word + "'", line.offset);
    }
    fields[word.substr(0, eq)] = word.substr(eq + 1);
  }
  return fields;
}

const std::string& Field(
    const std::map<std::string, std::string, std::less<>>& fields,
    std::string_view key, std::size_t offset) {
  const auto it = fields.find(key);
  if (it == fields.end()) {
    throw ParseError("header is missing '" + std::string(key) + "'", offset);
  }
  return it->second;
}

int PositiveIntField(
    const std::map<std::string, std::string, std::less<>>& fields,
    std::string_view key, std::size_t offset) {
  const long v = ParseInt(Field(fields, key, offset), offset);
  if (v <= 0 || v > 0x7fffffff) {
    throw ParseError("header field '" + std::string(key) +
                         "' must be a positive integer",
                     offset);
  }
  return static_cast<int>(v);
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    parts.push_back(line.substr(pos, comma == std::string_view::npos
                                         ? std::string_view::npos
                                         : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return parts;
}

std::filesystem::path::string_type Extension(const std::filesystem::path& p) {
  return p.extension().native();
}

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

void WriteMelspecBinary(std::ostream& out, const LogMelSpectrogram& logmel) {
  internal::ByteWriter w;
  w.Tag(kMelspecMagic);
  w.U32(kMelspecVersion);
  w.U32(static_cast<std::uint32_t>(logmel.num_frames()));
  w.U32(static_cast<std::uint32_t>(logmel.num_mels()));
  w.U32(static_cast<std::uint32_t>(logmel.sample_rate));
  w.U32(static_cast<std::uint32_t>(logmel.params.hop_size));
  w.U32(static_cast<std::uint32_t>(logmel.params.window_length));
  w.U32(static_cast<std::uint32_t>(logmel.params.fft_size));
  w.F32(static_cast<float>(logmel.log_floor_db));
  for (double v : logmel.frames.data()) w.F32(static_cast<float>(v));
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw IoError("failed writing melspec data");
}

LogMelSpectrogram ReadMelspecBinary(std::istream& in) {
  const std::string data = Slurp(in);
  internal::ByteReader reader(data);
  if (data.size() < kMelspecHeaderBytes) {
    throw ParseError("truncated melspec header", data.size());
  }
  if (reader.Bytes(4) != kMelspecMagic) {
    throw ParseError("missing MELS magic", 0);
  }
  const std::uint32_t version = reader.U32();
  if (version != kMelspecVersion) {
    throw ParseError("unsupported melspec version " + std::to_string(version),
                     4);
  }
  const std::uint32_t rows = reader.U32();
  const std::uint32_t cols = reader.U32();
  LogMelSpectrogram logmel;
  logmel.sample_rate = static_cast<int>(reader.U32());
  logmel.params.hop_size = static_cast<int>(reader.U32());
  logmel.params.window_length = static_cast<int>(reader.U32());
  logmel.params.fft_size = static_cast<int>(reader.U32());
  logmel.log_floor_db = reader.F32();
  if (cols == 0 || logmel.sample_rate <= 0) {
    throw ParseError("melspec header has zero columns or sample rate", 12);
  }
  const std::uint64_t count = static_cast<std::uint64_t>(rows) * cols;
  if (reader.remaining() != count * 4) {
    throw ParseError("melspec payload holds " +
                         std::to_string(reader.remaining()) +
                         " bytes, expected " + std::to_string(count * 4),
                     reader.offset());
  }
  logmel.frames = Matrix<double>(rows, cols);
  for (double& v : logmel.frames.data()) {
    const std::size_t at = reader.offset();
    v = reader.F32();
    if (!std::isfinite(v)) throw ParseError("non-finite melspec value", at);
  }
  return logmel;
}

void WriteMelspecCsv(std::ostream& out, const LogMelSpectrogram& logmel) {
  out << "#melspec v1 num_mels=" << logmel.num_mels()
      << " hop=" << logmel.params.hop_size
      << " win=" << logmel.params.window_length
      << " fft=" << logmel.params.fft_size << " sr=" << logmel.sample_rate
      << " floor_db=" << logmel.log_floor_db << '\n';
  const auto precision = out.precision(17);
  for (std::size_t t = 0; t < logmel.num_frames(); ++t) {
    const auto row = logmel.frames.row(t);
    for (std::size_t b = 0; b < row.size(); ++b) {
      if (b > 0) out << ',';
      out << row[b];
    }
    out << '\n';
  }
  out.precision(precision);
  if (!out) throw IoError("failed writing melspec CSV");
}

LogMelSpectrogram ReadMelspecCsv(std::istream& in) {
  const std::string text = Slurp(in);
  const std::vector<Line> lines = SplitLines(text);
  if (lines.empty()) throw ParseError("empty melspec CSV", 0);
  const auto fields = ParseHeader(lines[0], "melspec");
  const std::size_t at = lines[0].offset;

  LogMelSpectrogram logmel;
  const int num_mels = PositiveIntField(fields, "num_mels", at);
  logmel.params.hop_size = PositiveIntField(fields, "hop", at);
  logmel.params.window_length = PositiveIntField(fields, "win", at);
  logmel.params.fft_size = PositiveIntField(fields, "fft", at);
  logmel.sample_rate = PositiveIntField(fields, "sr", at);
  logmel.log_floor_db = ParseDouble(Field(fields, "floor_db", at), at);

  logmel.frames = Matrix<double>(lines.size() - 1,
                                 static_cast<std::size_t>(num_mels));
  for (std::size_t t = 0; t + 1 < lines.size(); ++t) {
    const Line& line = lines[t + 1];
    const auto cells = SplitCommas(line.text);
    if (cells.size() != static_cast<std::size_t>(num_mels)) {
      throw ParseError("row has " + std::to_string(cells.size()) +
                           " values, expected " + std::to_string(num_mels),
                       line.offset);
    }
    for (std::size_t b = 0; b < cells.size(); ++b) {
      logmel.frames(t, b) = ParseDouble(cells[b], line.offset);
    }
  }
  return logmel;
}

void WritePitchCsv(std::ostream& out, const PitchTrack& track) {
  out << "#pitch v1 hop=" << track.hop_size << " win=" << track.window_length
      << " sr=" << track.sample_rate << '\n';
  out << "frame_index,f0_hz\n";
  const auto precision = out.precision(17);
  for (std::size_t t = 0; t < track.f0_hz.size(); ++t) {
    out << t << ',';
    if (track.f0_hz[t]) out << *track.f0_hz[t];
    out << '\n';
  }
  out.precision(precision);
  if (!out) throw IoError("failed writing pitch CSV");
}

PitchTrack ReadPitchCsv(std::istream& in) {
  const std::string text = Slurp(in);
  const std::vector<Line> lines = SplitLines(text);
  if (lines.empty()) throw ParseError("empty pitch CSV", 0);
  const auto fields = ParseHeader(lines[0], "pitch");
  const std::size_t at = lines[0].offset;

  PitchTrack track;
  track.hop_size = PositiveIntField(fields, "hop", at);
  track.window_length = PositiveIntField(fields, "win", at);
  track.sample_rate = PositiveIntField(fields, "sr", at);

  std::size_t first = 1;
  if (lines.size() > 1 && lines[1].text == "frame_index,f0_hz") first = 2;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto cells = SplitCommas(line.text);
    if (cells.size() != 2) {
      throw ParseError("expected 'frame_index,f0_hz'", line.offset);
    }
    const long index = ParseInt(cells[0], line.offset);
    if (index != static_cast<long>(track.f0_hz.size())) {
      throw ParseError("frame index " + std::to_string(index) +
                           " out of sequence",
                       line.offset);
    }
    if (cells[1].empty()) {
      track.f0_hz.push_back(std::nullopt);
    } else {
      const double f0 = ParseDouble(cells[1], line.offset);
      if (f0 <= 0.0) throw ParseError("f0 must be positive", line.offset);
      track.f0_hz.push_back(f0);
    }
  }
  return track;
}

std::string FormatEvalRow(const std::string& ref_path,
                          const std::string& cand_path,
                          const EvalReport& report) {
  std::ostringstream row;
  row.precision(12);
  row << ref_path << ',' << cand_path << ',' << report.spectral_convergence
      << ',' << report.relative_spectral_convergence << ','
      << report.alignment_lag << ',' << report.energy_scale;
  return row.str();
}

void SaveMelspec(const std::filesystem::path& path,
                 const LogMelSpectrogram& logmel) {
  std::ofstream out = OpenOutput(path);
  if (Extension(path) == ".csv") {
    WriteMelspecCsv(out, logmel);
  } else {
    WriteMelspecBinary(out, logmel);
  }
}

LogMelSpectrogram LoadMelspec(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return Extension(path) == ".csv" ? ReadMelspecCsv(in)
                                   : ReadMelspecBinary(in);
}

void SavePitch(const std::filesystem::path& path, const PitchTrack& track) {
  std::ofstream out = OpenOutput(path);
  WritePitchCsv(out, track);
}

PitchTrack LoadPitch(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ReadPitchCsv(in);
}

}  // namespace melsin
