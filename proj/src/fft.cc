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

#include "melsin/fft.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "melsin/error.h"

namespace melsin {
namespace {

void CheckSize(std::size_t n) {
  if (!IsPowerOfTwo(n)) {
    throw InvalidArgument("FFT size must be a power of two, got " +
                          std::to_string(n));
  }
}

}  // namespace

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void FftInPlace(std::span<Complex> data, FftDirection direction) {
  const std::size_t n = data.size();
  CheckSize(n);

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const double sign = direction == FftDirection::kForward ? -1.0 : 1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const double step = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t k = 0; k < half; ++k) {
      // Twiddles are evaluated directly rather than by recurrence so that
      // round-off does not grow with the transform size.
      const Complex w = std::polar(1.0, step * static_cast<double>(k));
      for (std::size_t start = 0; start < n; start += len) {
        const Complex u = data[start + k];
        const Complex v = data[start + k + half] * w;
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

std::vector<Complex> Dft(std::span<const double> frame, std::size_t fft_size) {
  CheckSize(fft_size);
  if (frame.size() > fft_size) {
    throw InvalidArgument("frame longer than FFT size");
  }
  std::vector<Complex> buf(fft_size);
  std::copy(frame.begin(), frame.end(), buf.begin());
  FftInPlace(buf, FftDirection::kForward);
  return buf;
}

std::vector<Complex> Idft(std::span<const Complex> spectrum) {
  std::vector<Complex> buf(spectrum.begin(), spectrum.end());
  FftInPlace(buf, FftDirection::kInverse);
  const double scale = 1.0 / static_cast<double>(buf.size());
  for (Complex& c : buf) c *= scale;
  return buf;
}

std::vector<Complex> RealDft(std::span<const double> frame,
                             std::size_t fft_size) {
  std::vector<Complex> full = Dft(frame, fft_size);
  full.resize(fft_size / 2 + 1);
  return full;
}

std::vector<double> InverseRealDft(std::span<const Complex> half_spectrum,
                                   std::size_t fft_size) {
  CheckSize(fft_size);
  if (half_spectrum.size() != fft_size / 2 + 1) {
    throw InvalidArgument("one-sided spectrum has " +
                          std::to_string(half_spectrum.size()) +
                          " bins, expected " +
                          std::to_string(fft_size / 2 + 1));
  }
  std::vector<Complex> full(fft_size);
  full[0] = Complex(half_spectrum[0].real(), 0.0);
  if (fft_size > 1) {
    const std::size_t nyquist = fft_size / 2;
    full[nyquist] = Complex(half_spectrum[nyquist].real(), 0.0);
    for (std::size_t k = 1; k < nyquist; ++k) {
      full[k] = half_spectrum[k];
      full[fft_size - k] = std::conj(half_spectrum[k]);
    }
  }
  FftInPlace(full, FftDirection::kInverse);
  std::vector<double> out(fft_size);
  const double scale = 1.0 / static_cast<double>(fft_size);
  for (std::size_t i = 0; i < fft_size; ++i) out[i] = full[i].real() * scale;
  return out;
}

}  // namespace melsin
