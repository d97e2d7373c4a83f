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

#include <algorithm>
#include <cmath>
#include <limits>

#include "torwalk/discrepancy.hpp"
#include "torwalk/errors.hpp"

namespace torwalk::reference {
namespace {

// All boxes whose faces lie in the per-axis candidate lists, visited by
// recursion over axes.
template <typename Visit>
void for_each_box(const std::vector<std::vector<double>>& cands, Box& box, std::size_t axis,
                  bool allow_degenerate, Visit&& visit) {
  if (axis == cands.size()) {
    visit(box);
    return;
  }
  const auto& c = cands[axis];
  for (std::size_t s = 0; s < c.size(); ++s) {
    for (std::size_t t = allow_degenerate ? s : s + 1; t < c.size(); ++t) {
      box.a[axis] = c[s];
      box.b[axis] = c[t];
      for_each_box(cands, box, axis + 1, allow_degenerate, visit);
    }
  }
}

}  // namespace

DiscrepancyResult discrepancy_exact(const WeightedPointSet& p) {
  const int d = p.d();
  std::vector<std::vector<double>> cands(d);
  for (int i = 0; i < d; ++i) {
    cands[i] = {0.0, 1.0};
    for (std::size_t k = 0; k < p.size(); ++k) cands[i].push_back(p.point(k)[i]);
    std::sort(cands[i].begin(), cands[i].end());
    cands[i].erase(std::unique(cands[i].begin(), cands[i].end()), cands[i].end());
  }
  DiscrepancyResult best;
  best.value = -1.0;
  Box box{std::vector<double>(d), std::vector<double>(d)};
  for_each_box(cands, box, 0, true, [&](const Box& b) {
    const double vol = b.volume();
    const double excess = box_mass(p, b, BoxMode::closure) - vol;
    if (excess > best.value) {
      best.value = excess;
      best.witness = b;
      best.direction = Direction::excess;
    }
    const double deficit = vol - box_mass(p, b, BoxMode::interior);
    if (deficit > best.value) {
      best.value = deficit;
      best.witness = b;
      best.direction = Direction::deficit;
    }
  });
  best.value = std::clamp(best.value, 0.0, 1.0);
  return best;
}

double discrepancy_grid(const WeightedPointSet& p, int resolution) {
  if (resolution < 2) throw ValidationError("grid resolution must be >= 2");
  const int d = p.d();
  std::vector<std::vector<double>> cands(d);
  for (int i = 0; i < d; ++i) {
    for (int g = 0; g <= resolution; ++g) cands[i].push_back(static_cast<double>(g) / resolution);
  }
  double best = 0.0;
  Box box{std::vector<double>(d), std::vector<double>(d)};
  for_each_box(cands, box, 0, false, [&](const Box& b) {
    const double vol = b.volume();
    best = std::max(best, box_mass(p, b, BoxMode::closure) - vol);
    best = std::max(best, vol - box_mass(p, b, BoxMode::interior));
  });
  return best;
}

}  // namespace torwalk::reference
