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

#ifndef MELSIN_SERIALIZATION_H_
#define MELSIN_SERIALIZATION_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "melsin/eval.h"
#include "melsin/mel.h"
#include "melsin/pitch.h"

namespace melsin {

// Binary layout (little endian): "MELS", u32 version = 1, u32 rows,
// u32 cols, u32 sample_rate, u32 hop, u32 win, u32 fft, f32 floor_db,
// then rows * cols f32 values row-major.
void WriteMelspecBinary(std::ostream& out, const LogMelSpectrogram& logmel);
LogMelSpectrogram ReadMelspecBinary(std::istream& in);

// Header `#melspec v1 num_mels=.. hop=.. win=.. fft=.. sr=.. floor_db=..`
// followed by one comma-separated frame per line.
void WriteMelspecCsv(std::ostream& out, const LogMelSpectrogram& logmel);
LogMelSpectrogram ReadMelspecCsv(std::istream& in);

// Header `#pitch v1 hop=.. win=.. sr=..`, then `frame_index,f0_hz` lines
// with an empty f0 for unvoiced frames. Search bounds are not stored.
void WritePitchCsv(std::ostream& out, const PitchTrack& track);
PitchTrack ReadPitchCsv(std::istream& in);

// ref_path,cand_path,sc_eq5,sc_relative,lag_samples,energy_scale
inline constexpr const char* kEvalCsvHeader =
    "ref_path,cand_path,sc_eq5,sc_relative,lag_samples,energy_scale";
std::string FormatEvalRow(const std::string& ref_path,
                          const std::string& cand_path,
                          const EvalReport& report);

// File helpers; the binary/CSV melspec choice follows the extension
// (".csv" means CSV).
void SaveMelspec(const std::filesystem::path& path,
                 const LogMelSpectrogram& logmel);
LogMelSpectrogram LoadMelspec(const std::filesystem::path& path);
void SavePitch(const std::filesystem::path& path, const PitchTrack& track);
PitchTrack LoadPitch(const std::filesystem::path& path);

}  // namespace melsin

#endif  // MELSIN_SERIALIZATION_H_
