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

#include "torwalk/frequency_box.hpp"
#include "torwalk/generators.hpp"

namespace torwalk {

// {x}_inf and {x}: sup and Euclidean distance to the nearest integer vector.
struct NearestIntegerDistance {
  double sup = 0.0;
  double euclidean = 0.0;
};

NearestIntegerDistance nearest_integer_distance(std::span<const double> x);

// Distances of scale * A h from Z^n, with each (A h)_j reduced exactly.
NearestIntegerDistance ah_distance(const GeneratorMatrix& g, std::span<const std::int64_t> h,
                                   std::int64_t scale = 1);

// floor(q^{n/d}), corrected for pow() rounding at perfect powers.
std::int64_t dirichlet_bound(double q, int n, int d);

// First h (increasing |h|_inf, lexicographic within a shell, one of each
// pair +-h) with 0 < |h|_inf <= floor(q^{n/d}) and {A h}_inf < 1/q.
// Such an h always exists; failure raises ConsistencyError.
Frequency dirichlet_search(const GeneratorMatrix& g, double q,
                           Execution exec = Execution::parallel);

struct BadApproxEstimate {
  double c_est = 0.0;
  Frequency argmin_h;
  std::int64_t hmax = 0;
  std::int64_t certified_up_to = 0;
};

// min over 0 < |h|_inf <= hmax of {A h}_inf |h|_inf^{d/n}. Exact over the
// searched range only; 0 means a rational relation was hit.
BadApproxEstimate estimate_bad_constant(const GeneratorMatrix& g, std::int64_t hmax,
                                        Execution exec = Execution::parallel);

}  // namespace torwalk
