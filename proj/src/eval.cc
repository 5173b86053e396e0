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

#include "melsin/eval.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "melsin/error.h"

namespace melsin {
namespace {

void CheckSameShape(const PowerSpectrogram& a, const PowerSpectrogram& b) {
  if (a.num_frames() != b.num_frames() || a.num_bins() != b.num_bins()) {
    throw InvalidArgument(
        "spectrogram shapes differ: " + std::to_string(a.num_frames()) + "x" +
        std::to_string(a.num_bins()) + " vs " +
        std::to_string(b.num_frames()) + "x" + std::to_string(b.num_bins()));
  }
}

std::vector<double> PrefixEnergy(std::span<const double> x) {
  std::vector<double> prefix(x.size() + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    prefix[i + 1] = prefix[i] + x[i] * x[i];
  }
  return prefix;
}

AudioBuffer Scaled(const AudioBuffer& audio, double gain) {
  std::vector<double> samples(audio.samples().begin(), audio.samples().end());
  for (double& v : samples) v *= gain;
  return AudioBuffer(std::move(samples), audio.sample_rate());
}

// Bins strictly between DC and Nyquist appear twice in the full spectrum.
double FullSpectrumMagnitudeDistance(const ComplexSpectrogram& spec,
                                     const Matrix<double>& target) {
  const std::size_t last = spec.num_bins() - 1;
  double sum = 0.0;
  for (std::size_t t = 0; t < spec.num_frames(); ++t) {
    for (std::size_t k = 0; k <= last; ++k) {
      const double d = std::abs(spec.frames(t, k)) - target(t, k);
      sum += (k == 0 || k == last ? 1.0 : 2.0) * d * d;
    }
  }
  return std::sqrt(sum);
}

}  // namespace

int Align(const AudioBuffer& reference, const AudioBuffer& candidate,
          int max_lag) {
  if (reference.sample_rate() != candidate.sample_rate()) {
    throw InvalidArgument("sample rates differ: " +
                          std::to_string(reference.sample_rate()) + " vs " +
                          std::to_string(candidate.sample_rate()));
  }
  if (reference.empty() || candidate.empty()) {
    throw InvalidArgument("cannot align an empty signal");
  }
  if (max_lag < 0) throw InvalidArgument("max_lag must be non-negative");

  const auto r = reference.samples();
  const auto c = candidate.samples();
  const std::vector<double> r_energy = PrefixEnergy(r);
  const std::vector<double> c_energy = PrefixEnergy(c);
  const auto r_len = static_cast<long>(r.size());
  const auto c_len = static_cast<long>(c.size());

  auto correlation = [&](long lag) {
    const long begin = std::max(0L, -lag);
    const long end = std::min(r_len, c_len - lag);
    if (end <= begin) return 0.0;
    double dot = 0.0;
    for (long n = begin; n < end; ++n) dot += r[n] * c[n + lag];
    const double er = r_energy[end] - r_energy[begin];
    const double ec = c_energy[end + lag] - c_energy[begin + lag];
    const double denom = std::sqrt(er * ec);
    return denom > 0.0 ? std::abs(dot) / denom : 0.0;
  };

  // Visit 0, -1, 1, -2, 2, ... and only move on a clear improvement so that
  // ties resolve toward small and then negative lags.
  constexpr double kTieTolerance = 1e-12;
  long best_lag = 0;
  double best = correlation(0);
  for (long step = 1; step <= max_lag; ++step) {
    for (long lag : {-step, step}) {
      const double value = correlation(lag);
      if (value > best + kTieTolerance) {
        best = value;
        best_lag = lag;
      }
    }
  }
  return static_cast<int>(best_lag);
}

std::pair<AudioBuffer, AudioBuffer> ApplyAlignment(
    const AudioBuffer& reference, const AudioBuffer& candidate, int lag) {
  auto r = reference.samples();
  auto c = candidate.samples();
  const auto shift = static_cast<std::size_t>(std::abs(lag));
  if (lag >= 0) {
    c = shift < c.size() ? c.subspan(shift) : c.subspan(c.size());
  } else {
    r = shift < r.size() ? r.subspan(shift) : r.subspan(r.size());
  }
  const std::size_t common = std::min(r.size(), c.size());
  return {AudioBuffer(std::vector<double>(r.begin(), r.begin() + common),
                      reference.sample_rate()),
          AudioBuffer(std::vector<double>(c.begin(), c.begin() + common),
                      candidate.sample_rate())};
}

double EnergyNormalize(const PowerSpectrogram& ref_power,
                       const PowerSpectrogram& cand_power) {
  CheckSameShape(ref_power, cand_power);
  const double cand_total = cand_power.Total();
  if (!(cand_total > 0.0)) {
    throw DegenerateCandidate("candidate has zero total energy");
  }
  return std::sqrt(ref_power.Total() / cand_total);
}

double SpectralConvergence(const PowerSpectrogram& ref_power,
                           const PowerSpectrogram& cand_power) {
  CheckSameShape(ref_power, cand_power);
  const auto s = ref_power.frames.data();
  const auto s_hat = cand_power.frames.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += std::abs(s[i] - s_hat[i]);
  const double divisor =
      static_cast<double>(ref_power.num_frames() + ref_power.num_bins());
  return std::sqrt(sum / divisor);
}

double RelativeSpectralConvergence(const PowerSpectrogram& ref_power,
                                   const PowerSpectrogram& cand_power) {
  CheckSameShape(ref_power, cand_power);
  const auto s = ref_power.frames.data();
  const auto s_hat = cand_power.frames.data();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double a = std::sqrt(s[i]);
    const double d = a - std::sqrt(s_hat[i]);
    num += d * d;
    den += a * a;
  }
  return den > 0.0 ? std::sqrt(num / den) : (num > 0.0 ? INFINITY : 0.0);
}

EvalReport Evaluate(const AudioBuffer& reference, const AudioBuffer& candidate,
                    const StftParams& params, int max_lag) {
  params.Validate();
  const int lag = Align(reference, candidate, max_lag);
  const auto [ref, cand] = ApplyAlignment(reference, candidate, lag);
  if (ref.size() < static_cast<std::size_t>(params.window_length)) {
    throw InvalidArgument("aligned signals (" + std::to_string(ref.size()) +
                          " samples) are shorter than one metric window");
  }
  const Window window = MakeWindow(
      WindowKind::kHann, static_cast<std::size_t>(params.window_length), true);
  const PowerSpectrogram ref_power =
      ToPowerSpectrogram(Stft(ref, window, params));
  const double scale =
      EnergyNormalize(ref_power, ToPowerSpectrogram(Stft(cand, window, params)));
  const PowerSpectrogram cand_power =
      ToPowerSpectrogram(Stft(Scaled(cand, scale), window, params));

  EvalReport report;
  report.spectral_convergence = SpectralConvergence(ref_power, cand_power);
  report.relative_spectral_convergence =
      RelativeSpectralConvergence(ref_power, cand_power);
  report.alignment_lag = lag;
  report.energy_scale = scale;
  report.stft_params = params;
  return report;
}

Matrix<double> MelPseudoInverse(const LogMelSpectrogram& logmel,
                                const MelFilterbank& fb) {
  if (logmel.num_mels() != fb.num_mels() ||
      logmel.params.fft_size != fb.fft_size() ||
      logmel.sample_rate != fb.sample_rate()) {
    throw InvalidArgument(
        "log-mel spectrogram does not match the filterbank (num_mels, FFT "
        "size or sample rate)");
  }
  const auto num_mels = static_cast<Eigen::Index>(fb.num_mels());
  const auto num_bins = static_cast<Eigen::Index>(fb.num_bins());
  const auto num_frames = static_cast<Eigen::Index>(logmel.num_frames());

  Eigen::MatrixXd w(num_mels, num_bins);
  for (Eigen::Index b = 0; b < num_mels; ++b) {
    for (Eigen::Index k = 0; k < num_bins; ++k) w(b, k) = fb.weights()(b, k);
  }
  Eigen::MatrixXd gram = w * w.transpose();
  gram.diagonal().array() += kMelInverseRidge;
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw NumericFailure("mel Gram matrix is not positive definite");
  }

  Eigen::MatrixXd mel_power(num_mels, num_frames);
  for (Eigen::Index t = 0; t < num_frames; ++t) {
    for (Eigen::Index b = 0; b < num_mels; ++b) {
      mel_power(b, t) = std::pow(10.0, logmel.frames(t, b) / 10.0);
    }
  }
  const Eigen::MatrixXd linear = w.transpose() * llt.solve(mel_power);
  if (!linear.allFinite()) {
    throw NumericFailure("mel pseudo-inverse produced non-finite values");
  }

  Matrix<double> magnitude(logmel.num_frames(), fb.num_bins());
  for (Eigen::Index t = 0; t < num_frames; ++t) {
    for (Eigen::Index k = 0; k < num_bins; ++k) {
      magnitude(t, k) = std::sqrt(std::max(linear(k, t), 0.0));
    }
  }
  return magnitude;
}

GriffinLimResult GriffinLim(const Matrix<double>& magnitude,
                            const StftParams& params, const Window& window,
                            int sample_rate, int iterations,
                            std::uint64_t seed) {
  params.Validate();
  if (iterations < 1) throw InvalidArgument("iterations must be at least 1");
  if (magnitude.rows() == 0) throw InvalidArgument("empty magnitude target");
  if (magnitude.cols() != static_cast<std::size_t>(params.num_bins())) {
    throw InvalidArgument("magnitude has " + std::to_string(magnitude.cols()) +
                          " bins, expected " +
                          std::to_string(params.num_bins()));
  }
  if (static_cast<int>(window.size()) != params.window_length) {
    throw InvalidArgument("window length does not match the STFT parameters");
  }

  // Phases come straight from the 53 high bits of the engine so that the
  // sequence does not depend on the standard library's distributions.
  std::mt19937_64 engine(seed);
  ComplexSpectrogram estimate{
      Matrix<Complex>(magnitude.rows(), magnitude.cols()), params,
      sample_rate};
  for (std::size_t t = 0; t < magnitude.rows(); ++t) {
    for (std::size_t k = 0; k < magnitude.cols(); ++k) {
      const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      estimate.frames(t, k) =
          std::polar(magnitude(t, k), 2.0 * std::numbers::pi * unit);
    }
  }

  GriffinLimResult result{AudioBuffer({}, sample_rate), {}};
  result.distance_trace.reserve(static_cast<std::size_t>(iterations));
  for (int it = 0; it < iterations; ++it) {
    const AudioBuffer signal = Istft(estimate, window);
    const ComplexSpectrogram rebuilt = Stft(signal, window, params);
    result.distance_trace.push_back(
        FullSpectrumMagnitudeDistance(rebuilt, magnitude));
    for (std::size_t t = 0; t < magnitude.rows(); ++t) {
      for (std::size_t k = 0; k < magnitude.cols(); ++k) {
        estimate.frames(t, k) =
            std::polar(magnitude(t, k), std::arg(rebuilt.frames(t, k)));
      }
    }
  }
  result.audio = Istft(estimate, window);
  return result;
}

}  // namespace melsin
