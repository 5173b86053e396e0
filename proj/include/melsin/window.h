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

#ifndef MELSIN_WINDOW_H_
#define MELSIN_WINDOW_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace melsin {

enum class WindowKind { kBlackman, kHann, kRectangular };

std::string_view WindowKindName(WindowKind kind);
// Accepts "blackman", "hann" and "rectangular". Throws InvalidArgument.
WindowKind ParseWindowKind(std::string_view name);

class Window {
 public:
  WindowKind kind() const { return kind_; }
  bool normalized() const { return normalized_; }
  std::size_t size() const { return coefficients_.size(); }
  std::span<const double> coefficients() const { return coefficients_; }
  double operator[](std::size_t i) const { return coefficients_[i]; }

 private:
  friend Window MakeWindow(WindowKind kind, std::size_t length,
                           bool normalized);
  Window(WindowKind kind, bool normalized, std::vector<double> coefficients)
      : kind_(kind),
        normalized_(normalized),
        coefficients_(std::move(coefficients)) {}

  WindowKind kind_;
  bool normalized_;
  std::vector<double> coefficients_;
};

// Symmetric cosine-sum windows evaluated with denominator length - 1 (a
// length-1 window is the single coefficient 1). Blackman uses the exact
// 0.42 / 0.5 / 0.08 coefficients; round-off below zero is clamped to 0.
// When `normalized` is set the coefficients are divided by their sum.
Window MakeWindow(WindowKind kind, std::size_t length, bool normalized);

}  // namespace melsin

#endif  // MELSIN_WINDOW_H_
