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

#include "torwalk/theorem_bounds.hpp"

#include <omp.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "torwalk/errors.hpp"
#include "torwalk/fourier.hpp"
#include "torwalk/frequency_box.hpp"

namespace torwalk {

using std::numbers::pi;

namespace {

void check_nd(int n, int d) {
  if (n < 1 || d < 1) throw ValidationError("need n >= 1 and d >= 1");
}

}  // namespace

double theorem1_lower_bound(int n, int d, std::int64_t k) {
  check_nd(n, d);
  if (k < 1) throw ValidationError("the lower rate bound needs k >= 1");
  const double half_n = n / 2.0;
  return std::pow(static_cast<double>(k), -half_n) /
         (std::pow(pi, d) * std::pow(5.0, n + 1) * std::pow(static_cast<double>(d), half_n));
}

double theorem2_upper_bound(int n, int d, double c_a, std::int64_t k) {
  check_nd(n, d);
  if (!(c_a > 0.0)) throw ValidationError("C_A must be > 0 (matrix not certified badly approximable)");
  if (k < 1) throw ValidationError("the upper rate bound needs k >= 1");
  const double ratio = static_cast<double>(n) / d;
  return std::pow(1.5, d) * 20.0 * std::pow(n / (c_a * std::numbers::sqrt2), ratio) *
         std::pow(static_cast<double>(k), -ratio / 2.0);
}

double m_target(int n, int d, double c_a, std::int64_t k) {
  check_nd(n, d);
  if (!(c_a > 0.0)) throw ValidationError("C_A must be > 0");
  if (k < 1) throw ValidationError("k must be >= 1");
  const double base = 2.0 * static_cast<double>(k) * c_a * c_a / (static_cast<double>(n) * n);
  return std::pow(base, static_cast<double>(n) / (2.0 * d)) / 8.0;
}

std::int64_t choose_M(int n, int d, double c_a, std::int64_t k) {
  const double target = m_target(n, d, c_a, k);
  if (target < 1.0) {
    throw InfeasibleError("M = floor(" + std::to_string(target) + ") < 1: k=" + std::to_string(k) +
                          " is too small for the upper-bound pipeline at C_A=" +
                          std::to_string(c_a));
  }
  return static_cast<std::int64_t>(std::floor(target));
}

CohortSum cohort_sum_S(const GeneratorMatrix& g, std::int64_t k, std::int64_t m, Execution exec) {
  if (m < 1) throw ValidationError("M must be >= 1");
  if (k < 0) throw ValidationError("k must be >= 0");
  const FrequencyBox box(g.d(), m);
  const auto cohorts = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(m)));
  const double rate = 4.0 * static_cast<double>(k) / g.n();
  const std::int64_t chunks = chunk_count(box.size());
  std::vector<std::vector<CompensatedSum>> partial(static_cast<std::size_t>(chunks),
                                                   std::vector<CompensatedSum>(cohorts));
#pragma omp parallel if (exec == Execution::parallel && chunks > 1)
  {
    std::vector<std::int64_t> h(g.d());
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      auto& sums = partial[static_cast<std::size_t>(c)];
      const std::int64_t end = std::min(box.size(), (c + 1) * kChunk);
      for (std::int64_t flat = c * kChunk; flat < end; ++flat) {
        box.at(flat, h);
        const std::int64_t norm = sup_norm(h);
        if (norm == 0) continue;
        const double dist = ah_distance(g, h, 2).euclidean;
        const double term = std::exp(-rate * dist * dist) / static_cast<double>(weight_R(h));
        sums[std::bit_width(static_cast<std::uint64_t>(norm)) - 1].add(term);
      }
    }
  }
  CohortSum out;
  out.cohorts.assign(cohorts, 0.0);
  CompensatedSum total;
  for (std::size_t j = 0; j < cohorts; ++j) {
    CompensatedSum cj;
    for (const auto& p : partial) cj.add(p[j]);
    out.cohorts[j] = cj.value();
    total.add(cj);
  }
  out.s_value = total.value();
  out.lemma_ok = out.s_value <= 0.5 / static_cast<double>(m + 1);
  return out;
}

double fit_decay_exponent(std::span<const std::pair<double, double>> series) {
  if (series.size() < 3) throw ValidationError("exponent fit needs at least 3 points");
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto [k, dval] = series[i];
    if (!(k > 0.0) || !(dval > 0.0) || !std::isfinite(k) || !std::isfinite(dval)) {
      throw ValidationError("exponent fit needs positive finite k and D");
    }
    if (i > 0 && !(k > series[i - 1].first)) {
      throw ValidationError("exponent fit needs strictly increasing k");
    }
  }
  const auto count = static_cast<double>(series.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [k, dval] : series) {
    mx += std::log(k);
    my += std::log(dval);
  }
  mx /= count;
  my /= count;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [k, dval] : series) {
    const double dx = std::log(k) - mx;
    sxy += dx * (std::log(dval) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

CertifiedConstant certify_constant(const GeneratorMatrix& g, double c_a, std::int64_t hmax,
                                   Execution exec) {
  if (!(c_a > 0.0)) throw ValidationError("C_A must be > 0");
  const auto est = estimate_bad_constant(g, hmax, exec);
  return CertifiedConstant{c_a, hmax, est.c_est, c_a < est.c_est};
}

BoundReport bound_report(const GeneratorMatrix& g, std::int64_t k,
                         const std::optional<CertifiedConstant>& constant, Execution exec) {
  BoundReport r;
  r.n = g.n();
  r.d = g.d();
  r.k = k;
  r.lower = theorem1_lower_bound(g.n(), g.d(), k);
  if (constant) {
    r.constant = constant;
    r.upper = theorem2_upper_bound(g.n(), g.d(), constant->c_a, k);
    r.M = choose_M(g.n(), g.d(), constant->c_a, k);
    const auto s = cohort_sum_S(g, k, *r.M, exec);
    r.s_value = s.s_value;
    r.lemma_ok = s.lemma_ok;
  }
  return r;
}

}  // namespace torwalk
