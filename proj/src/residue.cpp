// Copyright 2026 The torwalk Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "torwalk/residue.hpp"

#include <cmath>

namespace torwalk {
namespace {

inline void two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void fast_two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  e = b - (s - a);
}

template <typename ValueAt>
Residue reduce(std::span<const std::int64_t> coeffs, ValueAt value_at) noexcept {
  double s = 0.0;
  double c = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    const double m = static_cast<double>(coeffs[i]);
    const double v = value_at(i);
    const double p = m * v;
    const double err = std::fma(m, v, -p);
    // p - rint(p) is exact: the integer part shares p's exponent range.
    const double pr = p - std::nearbyint(p);
    double t, e;
    two_sum(s, pr, t, e);
    s = t - std::nearbyint(t);
    c += e + err;
  }
  double hi, lo;
  fast_two_sum(s, c, hi, lo);
  const double shift = std::nearbyint(hi);
  if (shift != 0.0) {
    const double h2 = hi - shift;
    fast_two_sum(h2, lo, hi, lo);
  }
  return Residue{hi, lo};
}

}  // namespace

double Residue::distance() const noexcept { return std::fabs(hi + lo); }

double Residue::fractional() const noexcept {
  double r;
  if (hi > 0.0 || (hi == 0.0 && lo >= 0.0)) {
    r = hi + lo;
    if (r < 0.0) {
      double s, e;
      two_sum(1.0, hi, s, e);
      r = s + (e + lo);
    }
  } else {
    double s, e;
    two_sum(1.0, hi, s, e);
    r = s + (e + lo);
  }
  if (r >= 1.0 || r < 0.0) r = 0.0;
  return r + 0.0;  // no negative zero
}

Residue combination_residue(std::span<const std::int64_t> coeffs,
                            std::span<const double> values) noexcept {
  return reduce(coeffs, [&](std::size_t i) { return values[i]; });
}

Residue combination_residue(std::span<const std::int64_t> coeffs,
                            const double* values, std::size_t stride) noexcept {
  return reduce(coeffs, [&](std::size_t i) { return values[i * stride]; });
}

double frac(double x) noexcept {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r + 0.0;
}

}  // namespace torwalk
