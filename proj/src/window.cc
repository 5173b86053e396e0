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

#include "melsin/window.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "melsin/error.h"

namespace melsin {

std::string_view WindowKindName(WindowKind kind) {
  switch (kind) {
    case WindowKind::kBlackman:
      return "blackman";
    case WindowKind::kHann:
      return "hann";
    case WindowKind::kRectangular:
      return "rectangular";
  }
  return "unknown";
}

WindowKind ParseWindowKind(std::string_view name) {
  if (name == "blackman") return WindowKind::kBlackman;
  if (name == "hann") return WindowKind::kHann;
  if (name == "rectangular") return WindowKind::kRectangular;
  throw InvalidArgument("unknown window kind '" + std::string(name) + "'");
}

Window MakeWindow(WindowKind kind, std::size_t length, bool normalized) {
  if (length == 0) throw InvalidArgument("window length must be at least 1");

  std::vector<double> w(length, 1.0);
  if (length > 1 && kind != WindowKind::kRectangular) {
    const double denom = static_cast<double>(length - 1);
    for (std::size_t n = 0; n < length; ++n) {
      const double x = 2.0 * std::numbers::pi * static_cast<double>(n) / denom;
      double value = 0.0;
      if (kind == WindowKind::kBlackman) {
        value = 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x);
      } else {
        value = 0.5 - 0.5 * std::cos(x);
      }
      w[n] = value < 0.0 ? 0.0 : value;
    }
  }
  if (normalized) {
    // A two-point symmetric taper is all zeros; its normalised form falls
    // back to equal weights so that the coefficients still sum to one.
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (sum <= 0.0) std::fill(w.begin(), w.end(), 1.0);
    const double total = sum > 0.0 ? sum : static_cast<double>(length);
    for (double& v : w) v /= total;
  }
  return Window(kind, normalized, std::move(w));
}

}  // namespace melsin
