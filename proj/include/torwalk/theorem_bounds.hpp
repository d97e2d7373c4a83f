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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "torwalk/diophantine.hpp"
#include "torwalk/generators.hpp"
#include "torwalk/summation.hpp"

namespace torwalk {

// k^{-n/2} / (pi^d 5^{n+1} d^{n/2}). Valid for every generator set.
//
// The constant absorbs Z1 = 2 pi^2 / 25 from the Dirichlet step: with
// q = (2 pi^2 k d / Z1)^{1/2} the chosen frequency keeps |qhat|^k >= 1 - Z1.
double theorem1_lower_bound(int n, int d, std::int64_t k);

// (3/2)^d 20 (n / (C_A sqrt 2))^{n/d} k^{-n/(2d)} for a badly approximable
// matrix with approximation constant C_A > 0.
double theorem2_upper_bound(int n, int d, double c_a, std::int64_t k);

// (1/8) (2 k C_A^2 / n^2)^{n/(2d)}, the real number M is bracketed by.
double m_target(int n, int d, double c_a, std::int64_t k);

// floor(m_target). Throws InfeasibleError when it is below 1.
std::int64_t choose_M(int n, int d, double c_a, std::int64_t k);

struct CohortSum {
  double s_value = 0.0;
  bool lemma_ok = false;
  // Partial sums over the dyadic shells 2^{j-1} <= |h|_inf <= 2^j - 1,
  // j = 1..J; the last shell is truncated at M.
  std::vector<double> cohorts;
};

// S = sum_{0<|h|_inf<=M} exp(-(4k/n) {2Ah}^2) / R(h), {.} Euclidean, and
// whether S <= 0.5/(M+1).
CohortSum cohort_sum_S(const GeneratorMatrix& g, std::int64_t k, std::int64_t m,
                       Execution exec = Execution::parallel);

// Least-squares slope of log D against log k.
double fit_decay_exponent(std::span<const std::pair<double, double>> series);

// A C_A value together with the search range that backs it.
struct CertifiedConstant {
  double c_a = 0.0;
  std::int64_t hmax = 0;
  double c_est = 0.0;      // range minimum found by estimate_bad_constant
  bool certified = false;  // c_a < c_est
};

CertifiedConstant certify_constant(const GeneratorMatrix& g, double c_a, std::int64_t hmax,
                                   Execution exec = Execution::parallel);

struct BoundReport {
  int n = 0;
  int d = 0;
  std::int64_t k = 0;
  double lower = 0.0;
  std::optional<double> upper;
  std::optional<CertifiedConstant> constant;
  std::optional<std::int64_t> M;
  std::optional<double> s_value;
  std::optional<bool> lemma_ok;
};

// Lower bound always; upper bound, M, S and the cohort check when a constant
// is supplied. Infeasible M propagates as InfeasibleError.
BoundReport bound_report(const GeneratorMatrix& g, std::int64_t k,
                         const std::optional<CertifiedConstant>& constant,
                         Execution exec = Execution::parallel);

}  // namespace torwalk
