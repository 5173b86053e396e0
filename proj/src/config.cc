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

#include "melsin/config.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "melsin/error.h"
#include "melsin/fft.h"

namespace melsin {
namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string out(s.substr(b, e - b));
  if (out.size() >= 2 && (out.front() == '"' || out.front() == '\'') &&
      out.back() == out.front()) {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidArgument("config key '" + key + "': cannot parse '" + value +
                          "'");
  }
  return out;
}

double ParseReal(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double out = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() ||
      !std::isfinite(out)) {
    throw InvalidArgument("config key '" + key + "': cannot parse '" + value +
                          "'");
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw InvalidArgument("config key '" + key + "': expected a boolean, got '" +
                        value + "'");
}

[[noreturn]] void Conflict(const std::string& a, const std::string& b,
                           const std::string& detail) {
  throw InvalidArgument(a + " and " + b + " are inconsistent: " + detail);
}

[[noreturn]] void Bad(const std::string& field, const std::string& detail) {
  throw InvalidArgument(field + " " + detail);
}

}  // namespace

void PipelineConfig::Validate() const {
  if (sample_rate <= 0) Bad("sample_rate", "must be positive");
  if (num_mels < 1) Bad("num_mels", "must be at least 1");
  if (hop_size <= 0) Bad("hop_size", "must be positive");
  if (hop_size > window_length) {
    Conflict("hop_size", "window_length",
             std::to_string(hop_size) + " > " + std::to_string(window_length));
  }
  if (window_length > fft_size) {
    Conflict("window_length", "fft_size",
             std::to_string(window_length) + " > " + std::to_string(fft_size));
  }
  if (!IsPowerOfTwo(static_cast<std::size_t>(fft_size > 0 ? fft_size : 0))) {
    Bad("fft_size", "must be a power of two");
  }
  const double nyquist = sample_rate / 2.0;
  if (fmin_hz < 0.0) Bad("fmin_hz", "must be non-negative");
  if (effective_fmax_hz() > nyquist) {
    Conflict("fmax_hz", "sample_rate", "fmax exceeds sample_rate / 2");
  }
  if (fmin_hz >= effective_fmax_hz()) {
    Conflict("fmin_hz", "fmax_hz", "fmin must be below fmax");
  }
  if (f0_min_hz <= 0.0) Bad("f0_min_hz", "must be positive");
  if (f0_min_hz >= f0_max_hz) {
    Conflict("f0_min_hz", "f0_max_hz", "f0_min must be below f0_max");
  }
  if (f0_max_hz > nyquist) {
    Conflict("f0_max_hz", "sample_rate", "f0_max exceeds sample_rate / 2");
  }
  if (window_length < std::floor(sample_rate / f0_min_hz) + 2) {
    Conflict("f0_min_hz", "window_length",
             "a frame must hold one period of f0_min plus two samples");
  }
  if (!(yin_threshold > 0.0)) Bad("yin_threshold", "must be positive");
  if (!(continuity_tolerance > 0.0)) {
    Bad("continuity_tolerance", "must be positive");
  }
  if (!std::isfinite(log_floor_db)) Bad("log_floor_db", "must be finite");
  if (griffinlim_iterations < 1) {
    Bad("griffinlim_iterations", "must be at least 1");
  }
  if (max_lag < 0) Bad("max_lag", "must be non-negative");
}

void ApplyConfigValue(PipelineConfig& c, const std::string& key,
                      const std::string& raw) {
  const std::string value = Trim(raw);
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"sample_rate", [&](auto& v) { c.sample_rate = ParseNumber<int>(key, v); }},
      {"num_mels", [&](auto& v) { c.num_mels = ParseNumber<int>(key, v); }},
      {"window_length",
       [&](auto& v) { c.window_length = ParseNumber<int>(key, v); }},
      {"hop_size", [&](auto& v) { c.hop_size = ParseNumber<int>(key, v); }},
      {"fft_size", [&](auto& v) { c.fft_size = ParseNumber<int>(key, v); }},
      {"analysis_window",
       [&](auto& v) { c.analysis_window = ParseWindowKind(v); }},
      {"normalized_window",
       [&](auto& v) { c.normalized_window = ParseBool(key, v); }},
      {"filter_shape", [&](auto& v) { c.filter_shape = ParseFilterShape(v); }},
      {"fmin_hz", [&](auto& v) { c.fmin_hz = ParseReal(key, v); }},
      {"fmax_hz", [&](auto& v) { c.fmax_hz = ParseReal(key, v); }},
      {"f0_min_hz", [&](auto& v) { c.f0_min_hz = ParseReal(key, v); }},
      {"f0_max_hz", [&](auto& v) { c.f0_max_hz = ParseReal(key, v); }},
      {"yin_threshold", [&](auto& v) { c.yin_threshold = ParseReal(key, v); }},
      {"continuity_tolerance",
       [&](auto& v) { c.continuity_tolerance = ParseReal(key, v); }},
      {"log_floor_db", [&](auto& v) { c.log_floor_db = ParseReal(key, v); }},
      {"griffinlim_iterations",
       [&](auto& v) { c.griffinlim_iterations = ParseNumber<int>(key, v); }},
      {"griffinlim_seed",
       [&](auto& v) { c.griffinlim_seed = ParseNumber<std::uint64_t>(key, v); }},
      {"max_lag", [&](auto& v) { c.max_lag = ParseNumber<int>(key, v); }},
      {"output_format",
       [&](auto& v) {
         if (v == "pcm16") {
           c.output_format = SampleFormat::kPcm16;
         } else if (v == "float32") {
           c.output_format = SampleFormat::kFloat32;
         } else {
           throw InvalidArgument("output_format must be pcm16 or float32");
         }
       }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) {
    throw InvalidArgument("unknown config key '" + key + "'");
  }
  it->second(value);
}

PipelineConfig LoadConfigFile(const std::filesystem::path& path,
                              PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t comment = line.find_first_of("#;");
    const std::string body =
        Trim(comment == std::string::npos ? line : line.substr(0, comment));
    if (body.empty() || body.front() == '[') continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(path.string() + ":" + std::to_string(line_number) +
                            ": expected key = value");
    }
    ApplyConfigValue(base, Trim(body.substr(0, eq)), body.substr(eq + 1));
  }
  return base;
}

}  // namespace melsin
