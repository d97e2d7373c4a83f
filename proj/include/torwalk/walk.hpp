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

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "torwalk/generators.hpp"
#include "torwalk/summation.hpp"

namespace torwalk {

// Exact law of the net coefficient vector m in Z^n after k steps: count(m)
// sign sequences out of (2n)^k reach m. Atoms are stored in lexicographic
// order of m and only positive counts are kept.
struct LatticeDistribution {
  int k = 0;
  int n = 0;
  std::vector<std::int64_t> coeffs;  // size() * n, row-major
  std::vector<mpz_class> counts;
  mpz_class denominator = 1;

  std::size_t size() const noexcept { return counts.size(); }
  std::span<const std::int64_t> coefficient(std::size_t i) const noexcept {
    return {coeffs.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }
  // Zero when m is not in the support.
  mpz_class count_of(std::span<const std::int64_t> m) const;
  mpz_class total() const;
};

enum class Provenance { exact, empirical };

// Finite probability measure on [0,1)^d. Atoms are distinct (bit-identical
// points are merged) and sorted lexicographically by coordinates.
class WeightedPointSet {
 public:
  WeightedPointSet() = default;

  // Reduces coordinates mod 1, merges bit-identical points by summing their
  // weights. Throws ValidationError on bad shapes, non-finite values,
  // non-positive weights, or a total weight that is not 1 within 1e-9.
  static WeightedPointSet from_atoms(int d, std::vector<double> coords,
                                     std::vector<double> weights,
                                     Provenance provenance = Provenance::empirical);

  int d() const noexcept { return d_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  double weight(std::size_t i) const noexcept { return weights_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const double> weights() const noexcept { return weights_; }
  Provenance provenance() const noexcept { return provenance_; }
  double total_weight() const noexcept;

 private:
  friend class PointSetBuilder;

  int d_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
  Provenance provenance_ = Provenance::exact;
};

// Default bound on the dense DP box (2k+1)^n.
inline constexpr std::size_t kDefaultStateCap = 4'000'000;

// Incremental k-fold convolution over the box [-K, K]^n. Each step writes
// every reachable lattice point from its 2n neighbours, so points are
// independent and the OpenMP loop is deterministic by construction.
class WalkConvolution {
 public:
  // Throws InfeasibleError when (2*max_k+1)^n exceeds state_cap.
  WalkConvolution(int n, int max_k, Execution exec = Execution::parallel,
                  std::size_t state_cap = kDefaultStateCap);

  int k() const noexcept { return k_; }
  int max_k() const noexcept { return max_k_; }
  void step();
  void advance_to(int k);
  LatticeDistribution distribution() const;

 private:
  std::size_t index_of(std::span<const std::int64_t> m) const noexcept;

  int n_;
  int max_k_;
  int k_ = 0;
  Execution exec_;
  std::vector<std::size_t> strides_;
  std::vector<mpz_class> current_;
  std::vector<mpz_class> next_;
};

// Q^{*k} in coefficient coordinates.
LatticeDistribution exact_walk_distribution(const GeneratorMatrix& g, int k,
                                            Execution exec = Execution::parallel,
                                            std::size_t state_cap = kDefaultStateCap);

// Pushes a lattice distribution to the torus: m -> frac(sum_i m_i alpha_i).
// Counts of coinciding points are summed exactly before the single
// conversion to floating-point weights.
WeightedPointSet project_to_torus(const LatticeDistribution& dist, const GeneratorMatrix& g);

// Torus point of a coefficient vector.
std::vector<double> torus_point(const GeneratorMatrix& g, std::span<const std::int64_t> m);

// Monte Carlo estimate of Q^{*k} from `trials` independent walks. Trial t
// draws from CounterRng::stream(seed, t), so the output depends only on
// (g, k, trials, seed).
WeightedPointSet simulate_walk(const GeneratorMatrix& g, int k, std::int64_t trials,
                               std::uint64_t seed, Execution exec = Execution::parallel);

// Final coefficient vector of trial `trial`; exposed for tests.
std::vector<std::int64_t> simulate_trial(int n, int k, std::uint64_t seed, std::uint64_t trial);

// count / denominator as a double (relative error a few ulp).
double ratio_to_double(const mpz_class& num, const mpz_class& den);

}  // namespace torwalk

namespace torwalk::reference {

// Serial k-fold convolution over a sparse map; oracle for WalkConvolution.
LatticeDistribution walk_distribution(int n, int k);

// Serial Monte Carlo loop over simulate_trial; oracle for simulate_walk.
WeightedPointSet simulate_walk(const GeneratorMatrix& g, int k, std::int64_t trials,
                               std::uint64_t seed);

}  // namespace torwalk::reference
