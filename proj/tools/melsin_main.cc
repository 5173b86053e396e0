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

// Command line front end: analyze, invert, baseline, roundtrip, evaluate.

#include <atomic>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "melsin/config.h"
#include "melsin/error.h"
#include "melsin/pipeline.h"
#include "melsin/serialization.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumeric = 4;

int ExitCodeFor(melsin::ErrorCode code) {
  switch (code) {
    case melsin::ErrorCode::kDegenerateFilterbank:
      return kExitUsage;
    case melsin::ErrorCode::kCalibrationFailure:
    case melsin::ErrorCode::kDegenerateCandidate:
    case melsin::ErrorCode::kNumericFailure:
      return kExitNumeric;
    default:
      return kExitInput;
  }
}

// Every PipelineConfig field, as accepted by config files.
const char* const kConfigKeys[] = {
    "sample_rate",     "num_mels",          "window_length",
    "hop_size",        "fft_size",          "analysis_window",
    "normalized_window", "filter_shape",    "fmin_hz",
    "fmax_hz",         "f0_min_hz",         "f0_max_hz",
    "yin_threshold",   "continuity_tolerance", "log_floor_db",
    "griffinlim_iterations", "griffinlim_seed", "max_lag",
    "output_format",
};

struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void Register(CLI::App& app) {
    app.add_option("--config", config_path,
                   "key = value file with pipeline defaults")
        ->check(CLI::ExistingFile);
    for (const char* key : kConfigKeys) {
      std::string dashed = key;
      for (char& c : dashed) {
        if (c == '_') c = '-';
      }
      options[key] = app.add_option("--" + dashed, values[key],
                                    std::string("override ") + key);
    }
  }

  melsin::PipelineConfig Resolve() const {
    melsin::PipelineConfig config;
    if (!config_path.empty()) config = melsin::LoadConfigFile(config_path);
    for (const auto& [key, option] : options) {
      if (option->count() > 0) {
        melsin::ApplyConfigValue(config, key, values.at(key));
      }
    }
    config.Validate();
    return config;
  }
};

int RunRoundtripBatch(const std::vector<std::string>& inputs,
                      const fs::path& out_dir,
                      const melsin::PipelineConfig& config, int jobs) {
  std::atomic<std::size_t> next{0};
  std::mutex io_mutex;
  std::vector<int> status(inputs.size(), 0);
  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      try {
        const melsin::RoundtripOutputs out =
            melsin::RunRoundtrip(inputs[i], out_dir, config);
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cout << melsin::FormatEvalRow(inputs[i],
                                           out.sinusoidal_wav.string(),
                                           out.sinusoidal_report)
                  << '\n'
                  << melsin::FormatEvalRow(inputs[i],
                                           out.griffinlim_wav.string(),
                                           out.griffinlim_report)
                  << '\n';
      } catch (const melsin::Error& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << "roundtrip " << inputs[i] << ": "
                  << melsin::ErrorCodeName(e.code()) << ": " << e.what()
                  << '\n';
        status[i] = ExitCodeFor(e.code());
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << "roundtrip " << inputs[i] << ": " << e.what() << '\n';
        status[i] = kExitInput;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, inputs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (int s : status) {
    if (s != 0) return s;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic sinusoidal inversion of log-mel spectrograms"};
  app.require_subcommand(1);
  app.fallthrough();
  ConfigFlags flags;
  flags.Register(app);

  std::string input;
  std::string melspec;
  std::string pitch;
  std::string output;
  std::string frames_csv;
  std::string candidate;
  std::vector<std::string> inputs;
  int jobs = 1;

  CLI::App* analyze =
      app.add_subcommand("analyze", "write <stem>.melspec and <stem>.pitch.csv");
  analyze->add_option("input", input, "input WAV")->required();
  analyze->add_option("-o,--output", output, "output directory")->required();

  CLI::App* invert =
      app.add_subcommand("invert", "sinusoidal reconstruction");
  invert->add_option("melspec", melspec, "binary or CSV melspec")->required();
  invert->add_option("pitch", pitch, "pitch CSV")->required();
  invert->add_option("-o,--output", output, "output WAV")->required();
  invert->add_option("--dump-frames", frames_csv,
                     "write the harmonic frame table as CSV");

  CLI::App* baseline =
      app.add_subcommand("baseline", "Griffin-Lim reconstruction");
  baseline->add_option("melspec", melspec, "binary or CSV melspec")
      ->required();
  baseline->add_option("-o,--output", output, "output WAV")->required();

  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "analyze, invert, baseline and evaluate");
  roundtrip->add_option("inputs", inputs, "input WAV files")->required();
  roundtrip->add_option("-o,--output", output, "output directory")
      ->required();
  roundtrip->add_option("-j,--jobs", jobs, "files processed in parallel")
      ->check(CLI::PositiveNumber);

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "print an evaluation CSV row");
  evaluate->add_option("reference", input, "reference WAV")->required();
  evaluate->add_option("candidate", candidate, "candidate WAV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  melsin::PipelineConfig config;
  try {
    config = flags.Resolve();
  } catch (const melsin::Error& e) {
    std::cerr << "config: " << e.what() << '\n';
    return e.code() == melsin::ErrorCode::kIoError ? kExitInput : kExitUsage;
  }

  std::string stage = "setup";
  try {
    if (analyze->parsed()) {
      stage = "analyze";
      const melsin::AnalyzeOutputs out =
          melsin::RunAnalyze(input, output, config);
      std::cout << out.melspec.string() << '\n' << out.pitch.string() << '\n';
    } else if (invert->parsed()) {
      stage = "invert";
      melsin::RunInvert(melspec, pitch, output, config, frames_csv);
    } else if (baseline->parsed()) {
      stage = "baseline";
      melsin::RunBaseline(melspec, output, config);
    } else if (roundtrip->parsed()) {
      stage = "roundtrip";
      return RunRoundtripBatch(inputs, output, config, jobs);
    } else if (evaluate->parsed()) {
      stage = "evaluate";
      std::cout << melsin::FormatEvalRow(
                       input, candidate,
                       melsin::RunEvaluate(input, candidate, config))
                << '\n';
    }
  } catch (const melsin::Error& e) {
    std::cerr << stage << ": " << melsin::ErrorCodeName(e.code()) << ": "
              << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << stage << ": " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
