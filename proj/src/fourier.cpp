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

#include "torwalk/fourier.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>
#include <string>

#include "torwalk/errors.hpp"
#include "torwalk/residue.hpp"
#include "torwalk/summation.hpp"

namespace torwalk {

using std::numbers::pi;

double qhat(const GeneratorMatrix& g, std::span<const std::int64_t> h) {
  if (h.size() != static_cast<std::size_t>(g.d())) {
    throw ValidationError("frequency has " + std::to_string(h.size()) +
                          " coordinates, matrix has d=" + std::to_string(g.d()));
  }
  CompensatedSum s;
  for (int j = 0; j < g.n(); ++j) {
    const double phase = combination_residue(h, g.row(j)).value();
    s.add(std::cos(2.0 * pi * phase));
  }
  return s.value() / g.n();
}

std::uint64_t weight_R(std::span<const std::int64_t> h) {
  std::uint64_t r = 1;
  for (auto v : h) {
    const std::uint64_t a = v == 0 ? 1 : static_cast<std::uint64_t>(v < 0 ? -v : v);
    if (__builtin_mul_overflow(r, a, &r)) throw ValidationError("R(h) overflows 64 bits");
  }
  return r;
}

double single_h_lower_bound(const GeneratorMatrix& g, std::int64_t k,
                            std::span<const std::int64_t> h, std::optional<std::vector<double>> r) {
  if (k < 0) throw ValidationError("step count must be non-negative");
  if (is_zero(h)) throw ValidationError("the Fourier lower bound needs h != 0");
  const double q = std::fabs(qhat(g, h));
  const double power = std::pow(q, static_cast<double>(k));
  if (!r) {
    return power / (std::pow(pi, g.d()) * static_cast<double>(weight_R(h)));
  }
  if (r->size() != h.size()) throw ValidationError("r must have d coordinates");
  double prod = 1.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double ri = (*r)[i];
    if (!(ri > 0.0 && ri <= 0.5)) throw ValidationError("each r_i must lie in (0, 0.5]");
    if (h[i] != 0) {
      const double hi = static_cast<double>(h[i]);
      const double s = std::sin(2.0 * pi * hi * ri);
      prod *= s * s / (pi * pi * hi * hi);
    } else {
      prod *= 4.0 * ri * ri;
    }
  }
  return power * std::sqrt(prod);
}

FourierLowerBound best_fourier_lower_bound(const GeneratorMatrix& g, std::int64_t k,
                                           std::int64_t hmax, Execution exec) {
  if (hmax < 1) throw ValidationError("Hmax must be >= 1");
  const FrequencyBox box(g.d(), hmax);
  const std::int64_t chunks = chunk_count(box.size());
  std::vector<double> chunk_value(static_cast<std::size_t>(chunks), -1.0);
  std::vector<std::int64_t> chunk_arg(static_cast<std::size_t>(chunks), -1);
#pragma omp parallel if (exec == Execution::parallel && chunks > 1)
  {
    std::vector<std::int64_t> h(g.d());
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      double best = -1.0;
      std::int64_t arg = -1;
      const std::int64_t end = std::min(box.size(), (c + 1) * kChunk);
      for (std::int64_t flat = c * kChunk; flat < end; ++flat) {
        box.at(flat, h);
        if (is_zero(h)) continue;
        const double v = single_h_lower_bound(g, k, h);
        if (v > best) {
          best = v;
          arg = flat;
        }
      }
      chunk_value[static_cast<std::size_t>(c)] = best;
      chunk_arg[static_cast<std::size_t>(c)] = arg;
    }
  }
  FourierLowerBound out;
  out.value = -1.0;
  std::int64_t arg = -1;
  for (std::size_t c = 0; c < chunk_value.size(); ++c) {
    if (chunk_value[c] > out.value) {
      out.value = chunk_value[c];
      arg = chunk_arg[c];
    }
  }
  out.h.resize(g.d());
  box.at(arg, out.h);
  return out;
}

double etk_upper_bound(const GeneratorMatrix& g, std::int64_t k, std::int64_t m, Execution exec) {
  if (m < 1) throw ValidationError("ETK truncation M must be >= 1");
  if (k < 0) throw ValidationError("step count must be non-negative");
  const FrequencyBox box(g.d(), m);
  const double kk = static_cast<double>(k);
  const double sum = ordered_box_sum(
      box,
      [&](std::span<const std::int64_t> h) {
        if (is_zero(h)) return 0.0;
        return std::pow(std::fabs(qhat(g, h)), kk) / static_cast<double>(weight_R(h));
      },
      exec);
  return std::pow(1.5, g.d()) * (2.0 / static_cast<double>(m + 1) + sum);
}

}  // namespace torwalk
