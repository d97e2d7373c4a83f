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


// Independent reference computations shared by the test binaries. Nothing
// here calls into the library's kernels; the oracles use the most direct
// formulation available so that agreement means something.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "torwalk/rng.hpp"
#include "torwalk/walk.hpp"

namespace torwalk::testing {

// Counts of the net coefficient vector over all (2n)^k sign sequences.
inline std::map<std::vector<std::int64_t>, std::uint64_t> enumerate_paths(int n, int k) {
  std::map<std::vector<std::int64_t>, std::uint64_t> out;
  std::uint64_t total = 1;
  for (int s = 0; s < k; ++s) total *= 2 * static_cast<std::uint64_t>(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::int64_t> m(n, 0);
    std::uint64_t c = code;
    for (int s = 0; s < k; ++s) {
      const auto step = c % (2 * n);
      c /= 2 * n;
      m[step / 2] += (step % 2 == 0) ? 1 : -1;
    }
    ++out[m];
  }
  return out;
}

// Random point set with d coordinates and positive weights summing to 1.
inline WeightedPointSet random_point_set(int d, std::size_t count, std::uint64_t seed,
                                         bool equal_weights = false) {
  CounterRng rng = CounterRng::stream(seed, 7);
  std::vector<double> coords(count * d);
  std::vector<double> w(count);
  for (auto& c : coords) c = rng.uniform();
  double s = 0.0;
  for (auto& x : w) {
    x = equal_weights ? 1.0 : 0.05 + rng.uniform();
    s += x;
  }
  for (auto& x : w) x /= s;
  return WeightedPointSet::from_atoms(d, std::move(coords), std::move(w));
}

// Points on a coarse lattice so that ties between coordinates are common.
inline WeightedPointSet lattice_point_set(int d, std::size_t count, int grid, std::uint64_t seed) {
  CounterRng rng = CounterRng::stream(seed, 11);
  std::vector<double> coords(count * d);
  std::vector<double> w(count, 1.0 / static_cast<double>(count));
  for (auto& c : coords) c = static_cast<double>(rng.below(grid)) / grid;
  return WeightedPointSet::from_atoms(d, std::move(coords), std::move(w));
}

}  // namespace torwalk::testing
