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

#include "torwalk/diophantine.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "torwalk/errors.hpp"
#include "torwalk/residue.hpp"

namespace torwalk {

NearestIntegerDistance nearest_integer_distance(std::span<const double> x) {
  NearestIntegerDistance out;
  double sq = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) throw ValidationError("nearest_integer_distance needs finite input");
    const double r = std::fabs(v - std::nearbyint(v));
    out.sup = std::max(out.sup, r);
    sq += r * r;
  }
  out.euclidean = std::sqrt(sq);
  return out;
}

NearestIntegerDistance ah_distance(const GeneratorMatrix& g, std::span<const std::int64_t> h,
                                   std::int64_t scale) {
  std::vector<std::int64_t> sh(h.begin(), h.end());
  for (auto& v : sh) v *= scale;
  NearestIntegerDistance out;
  double sq = 0.0;
  for (int j = 0; j < g.n(); ++j) {
    const double r = combination_residue(sh, g.row(j)).distance();
    out.sup = std::max(out.sup, r);
    sq += r * r;
  }
  out.euclidean = std::sqrt(sq);
  return out;
}

std::int64_t dirichlet_bound(double q, int n, int d) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw ValidationError("Dirichlet search needs q >= 1");
  const long double target = std::pow(static_cast<long double>(q), static_cast<long double>(n));
  auto b = static_cast<std::int64_t>(std::floor(std::pow(q, static_cast<double>(n) / d)));
  // b is the largest integer with b^d <= q^n.
  auto pow_d = [d](std::int64_t v) {
    long double p = 1;
    for (int i = 0; i < d; ++i) p *= static_cast<long double>(v);
    return p;
  };
  while (b > 0 && pow_d(b) > target) --b;
  while (pow_d(b + 1) <= target) ++b;
  return b;
}

Frequency dirichlet_search(const GeneratorMatrix& g, double q, Execution exec) {
  const std::int64_t bound = dirichlet_bound(q, g.n(), g.d());
  if (bound < 1) throw ValidationError("floor(q^{n/d}) must be >= 1");
  const double threshold = 1.0 / q;
  double best_dist = std::numeric_limits<double>::infinity();
  Frequency best_h;
  for (std::int64_t shell = 1; shell <= bound; ++shell) {
    const FrequencyBox box(g.d(), shell);
    std::int64_t first = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel if (exec == Execution::parallel && box.size() > kChunk)
    {
      std::vector<std::int64_t> h(g.d());
#pragma omp for schedule(static) reduction(min : first)
      for (std::int64_t flat = 0; flat < box.size(); ++flat) {
        if (flat >= first) continue;
        box.at(flat, h);
        if (sup_norm(h) != shell || !is_canonical(h)) continue;
        if (ah_distance(g, h).sup < threshold) first = std::min(first, flat);
      }
    }
    if (first != std::numeric_limits<std::int64_t>::max()) {
      Frequency h(g.d());
      box.at(first, h);
      return h;
    }
    // Track the closest miss for the diagnostic.
    std::vector<std::int64_t> h(g.d());
    for (std::int64_t flat = 0; flat < box.size(); ++flat) {
      box.at(flat, h);
      if (sup_norm(h) != shell || !is_canonical(h)) continue;
      const double dist = ah_distance(g, h).sup;
      if (dist < best_dist) {
        best_dist = dist;
        best_h = h;
      }
    }
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "Dirichlet search found no h with |h|_inf <= " << bound << " and {Ah}_inf < 1/q = "
      << threshold << "; best candidate {Ah}_inf = " << best_dist << " at h = (";
  for (std::size_t i = 0; i < best_h.size(); ++i) msg << (i ? "," : "") << best_h[i];
  msg << ")";
  throw ConsistencyError(msg.str());
}

BadApproxEstimate estimate_bad_constant(const GeneratorMatrix& g, std::int64_t hmax,
                                        Execution exec) {
  if (hmax < 1) throw ValidationError("Hmax must be >= 1");
  const FrequencyBox box(g.d(), hmax);
  const double exponent = static_cast<double>(g.d()) / g.n();
  const std::int64_t chunks = chunk_count(box.size());
  std::vector<double> chunk_value(static_cast<std::size_t>(chunks),
                                  std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> chunk_arg(static_cast<std::size_t>(chunks), -1);
#pragma omp parallel if (exec == Execution::parallel && chunks > 1)
  {
    std::vector<std::int64_t> h(g.d());
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      double best = std::numeric_limits<double>::infinity();
      std::int64_t arg = -1;
      const std::int64_t end = std::min(box.size(), (c + 1) * kChunk);
      for (std::int64_t flat = c * kChunk; flat < end; ++flat) {
        box.at(flat, h);
        if (!is_canonical(h)) continue;
        const double norm = static_cast<double>(sup_norm(h));
        const double v = ah_distance(g, h).sup * std::pow(norm, exponent);
        if (v < best) {
          best = v;
          arg = flat;
        }
      }
      chunk_value[static_cast<std::size_t>(c)] = best;
      chunk_arg[static_cast<std::size_t>(c)] = arg;
    }
  }
  BadApproxEstimate est;
  est.c_est = std::numeric_limits<double>::infinity();
  std::int64_t arg = -1;
  for (std::size_t c = 0; c < chunk_value.size(); ++c) {
    if (chunk_value[c] < est.c_est) {
      est.c_est = chunk_value[c];
      arg = chunk_arg[c];
    }
  }
  est.argmin_h.resize(g.d());
  box.at(arg, est.argmin_h);
  est.hmax = hmax;
  est.certified_up_to = hmax;
  return est;
}

}  // namespace torwalk
