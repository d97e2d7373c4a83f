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
#include <vector>

#include "torwalk/frequency_box.hpp"
#include "torwalk/generators.hpp"

namespace torwalk {

// Fourier transform of the step law: (1/n) sum_j cos(2 pi h . alpha_j).
// Each phase h . alpha_j is reduced mod 1 exactly before the cosine, which
// makes qhat(G, -h) == qhat(G, h) bit for bit and qhat(G, 0) == 1.
double qhat(const GeneratorMatrix& g, std::span<const std::int64_t> h);

// prod_i max(1, |h_i|) over all d coordinates. Throws on overflow.
std::uint64_t weight_R(std::span<const std::int64_t> h);

// One term of the Fourier lower bound on D(P), P = Q^{*k}:
//   [ qhat^{2k} prod_i t_i ]^{1/2},
//   t_i = sin^2(2 pi h_i r_i) / (pi h_i)^2  (h_i != 0),   4 r_i^2  (h_i == 0).
// Without r the schedule r_i = 1/(4|h_i|), r_i = 1/(2 pi) is used and the
// value is |qhat|^k / (pi^d R(h)).
double single_h_lower_bound(const GeneratorMatrix& g, std::int64_t k,
                            std::span<const std::int64_t> h,
                            std::optional<std::vector<double>> r = std::nullopt);

struct FourierLowerBound {
  double value = 0.0;
  Frequency h;
};

// Max of single_h_lower_bound (default schedule) over 0 < |h|_inf <= hmax;
// ties go to the lexicographically smallest h.
FourierLowerBound best_fourier_lower_bound(const GeneratorMatrix& g, std::int64_t k,
                                           std::int64_t hmax,
                                           Execution exec = Execution::parallel);

// Erdos-Turan-Koksma bound
//   (3/2)^d ( 2/(M+1) + sum_{0<|h|_inf<=M} |qhat(h)|^k / R(h) ).
double etk_upper_bound(const GeneratorMatrix& g, std::int64_t k, std::int64_t m,
                       Execution exec = Execution::parallel);

namespace reference {

// Plain serial double loops; oracles for the kernels above.
double etk_upper_bound(const GeneratorMatrix& g, std::int64_t k, std::int64_t m);
FourierLowerBound best_fourier_lower_bound(const GeneratorMatrix& g, std::int64_t k,
                                           std::int64_t hmax);

}  // namespace reference
}  // namespace torwalk
