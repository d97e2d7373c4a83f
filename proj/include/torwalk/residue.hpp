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

#pragma once

#include <cstdint>
#include <span>

namespace torwalk {

// A real number x carried as an unevaluated sum hi + lo, reduced modulo 1
// to the centred range [-1/2, 1/2].
struct Residue {
  double hi = 0.0;
  double lo = 0.0;

  double value() const noexcept { return hi + lo; }
  // Distance to the nearest integer, |x - round(x)|.
  double distance() const noexcept;
  // Fractional part in [0, 1), correctly rounded up to the last bit; a value
  // that rounds to 1 is reported as 0 (the same torus point).
  double fractional() const noexcept;
};

// Residue of sum_i coeffs[i] * values[i] modulo 1. Products are formed
// exactly with FMA and accumulated in double-double, so the result is the
// fractional part of the exact linear combination of the stored doubles.
// Coefficients must satisfy |c| < 2^53.
Residue combination_residue(std::span<const std::int64_t> coeffs,
                            std::span<const double> values) noexcept;

// Same, for a strided view into a row-major matrix column.
Residue combination_residue(std::span<const std::int64_t> coeffs,
                            const double* values, std::size_t stride) noexcept;

// Reduction of a single double to [0, 1); 1.0 after rounding maps to 0.
double frac(double x) noexcept;

}  // namespace torwalk
