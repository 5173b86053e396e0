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

#ifndef MELSIN_FFT_H_
#define MELSIN_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace melsin {

using Complex = std::complex<double>;

bool IsPowerOfTwo(std::size_t n);

enum class FftDirection { kForward, kInverse };

// Iterative radix-2 transform. The inverse direction is unscaled.
void FftInPlace(std::span<Complex> data, FftDirection direction);

// Forward DFT of `frame` zero-padded to `fft_size`; returns all fft_size bins.
std::vector<Complex> Dft(std::span<const double> frame, std::size_t fft_size);

// Inverse of Dft including the 1/N factor.
std::vector<Complex> Idft(std::span<const Complex> spectrum);

// One-sided (fft_size/2 + 1 bins) forward transform of a real frame.
std::vector<Complex> RealDft(std::span<const double> frame,
                             std::size_t fft_size);

// Real signal whose one-sided spectrum is `half_spectrum`, i.e. the inverse
// of the Hermitian extension. Imaginary parts of the DC and Nyquist bins are
// ignored.
std::vector<double> InverseRealDft(std::span<const Complex> half_spectrum,
                                   std::size_t fft_size);

}  // namespace melsin

#endif  // MELSIN_FFT_H_
