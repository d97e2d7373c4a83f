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

#include <cstddef>
#include <vector>

#include "torwalk/summation.hpp"
#include "torwalk/walk.hpp"

namespace torwalk {

// Axis-parallel box inside [0,1]^d. How the faces are treated is decided by
// BoxMode at evaluation time. Witnesses of non-attained suprema are
// limiting boxes and may be degenerate (a_i == b_i).
struct Box {
  std::vector<double> a;
  std::vector<double> b;

  double volume() const noexcept;
  friend bool operator==(const Box&, const Box&) = default;
};

enum class BoxMode {
  closure,   // a_i <= x_i <= b_i
  interior,  // a_i <  x_i <  b_i
};

enum class Direction {
  excess,   // P(B) > vol(B)
  deficit,  // vol(B) > P(B)
};

struct DiscrepancyResult {
  double value = 0.0;
  Box witness;
  Direction direction = Direction::excess;
  bool exact = true;
  int resolution = 0;  // grid resolution when !exact
};

// Largest atom counts accepted by discrepancy_exact for d = 1, 2, 3.
inline constexpr std::size_t kExactCapD1 = 20000;
inline constexpr std::size_t kExactCapD2 = 400;
inline constexpr std::size_t kExactCapD3 = 60;
std::size_t exact_discrepancy_cap(int d) noexcept;

// Largest (2*res+1)^d slot grid accepted by discrepancy_grid.
inline constexpr std::size_t kGridSlotCap = std::size_t{1} << 24;

// P(B) under the given boundary convention. Requires 0 <= a_i <= b_i <= 1.
double box_mass(const WeightedPointSet& p, const Box& box, BoxMode mode);

// sup over boxes of |P(B) - vol(B)|. Candidate faces are the atom
// coordinates together with 0 and 1; the excess branch uses closed boxes,
// the deficit branch open ones, which realises suprema that are only
// approached in the limit. The first d-1 axes are enumerated (in parallel
// over flattened interval pairs) and the last axis is a linear sweep.
// Ties prefer excess, then the lexicographically smallest witness.
// Throws InfeasibleError above exact_discrepancy_cap(d).
DiscrepancyResult discrepancy_exact(const WeightedPointSet& p,
                                    Execution exec = Execution::parallel);

// Max of |P(B) - vol(B)| over boxes with corners on {0, 1/res, ..., 1},
// counting both closure and interior masses. Never exceeds the exact value.
DiscrepancyResult discrepancy_grid(const WeightedPointSet& p, int resolution,
                                   Execution exec = Execution::parallel);

namespace reference {

// Brute force over every candidate box, evaluated with box_mass. Serial,
// O((N+2)^{2d} N); kept as the oracle for discrepancy_exact.
DiscrepancyResult discrepancy_exact(const WeightedPointSet& p);

// Brute force over every grid box with box_mass. O(res^{2d} N).
double discrepancy_grid(const WeightedPointSet& p, int resolution);

}  // namespace reference
}  // namespace torwalk
