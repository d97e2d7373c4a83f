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

#include <cmath>
#include <numbers>

#include "torwalk/fourier.hpp"

namespace torwalk::reference {

using std::numbers::pi;

namespace {

// Direct evaluation without the exact phase reduction.
double naive_qhat(const GeneratorMatrix& g, const std::vector<std::int64_t>& h) {
  double s = 0.0;
  for (int j = 0; j < g.n(); ++j) {
    double dot = 0.0;
    for (int i = 0; i < g.d(); ++i) dot += static_cast<double>(h[i]) * g(j, i);
    s += std::cos(2.0 * pi * dot);
  }
  return s / g.n();
}

double naive_R(const std::vector<std::int64_t>& h) {
  double r = 1.0;
  for (auto v : h) r *= std::max<double>(1.0, std::fabs(static_cast<double>(v)));
  return r;
}

template <typename Visit>
void for_each_h(int d, std::int64_t radius, std::vector<std::int64_t>& h, int axis, Visit&& visit) {
  if (axis == d) {
    visit(h);
    return;
  }
  for (std::int64_t v = -radius; v <= radius; ++v) {
    h[axis] = v;
    for_each_h(d, radius, h, axis + 1, visit);
  }
}

}  // namespace

double etk_upper_bound(const GeneratorMatrix& g, std::int64_t k, std::int64_t m) {
  double sum = 0.0;
  std::vector<std::int64_t> h(g.d());
  for_each_h(g.d(), m, h, 0, [&](const std::vector<std::int64_t>& v) {
    bool zero = true;
    for (auto x : v) zero = zero && x == 0;
    if (!zero) sum += std::pow(std::fabs(naive_qhat(g, v)), static_cast<double>(k)) / naive_R(v);
  });
  return std::pow(1.5, g.d()) * (2.0 / static_cast<double>(m + 1) + sum);
}

FourierLowerBound best_fourier_lower_bound(const GeneratorMatrix& g, std::int64_t k,
                                           std::int64_t hmax) {
  FourierLowerBound best;
  best.value = -1.0;
  std::vector<std::int64_t> h(g.d());
  for_each_h(g.d(), hmax, h, 0, [&](const std::vector<std::int64_t>& v) {
    bool zero = true;
    for (auto x : v) zero = zero && x == 0;
    if (zero) return;
    const double val = std::pow(std::fabs(naive_qhat(g, v)), static_cast<double>(k)) /
                       (std::pow(pi, g.d()) * naive_R(v));
    if (val > best.value) {
      best.value = val;
      best.h = v;
    }
  });
  return best;
}

}  // namespace torwalk::reference
