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

#include "torwalk/walk.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "torwalk/errors.hpp"
#include "torwalk/residue.hpp"
#include "torwalk/rng.hpp"

namespace torwalk {

class PointSetBuilder {
 public:
  // Groups atoms with bit-identical coordinates, combines their counts with
  // `plus`, and converts each merged count once with `to_weight`.
  template <typename Count, typename Plus, typename ToWeight>
  static WeightedPointSet merge(int d, const std::vector<double>& coords,
                                std::vector<Count> counts, Plus plus, ToWeight to_weight,
                                Provenance provenance) {
    const std::size_t count = counts.size();
    const auto dd = static_cast<std::size_t>(d);
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto point = [&](std::size_t i) { return coords.begin() + i * dd; };
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return std::lexicographical_compare(point(x), point(x) + d, point(y), point(y) + d);
    });

    WeightedPointSet out;
    out.d_ = d;
    out.provenance_ = provenance;
    std::size_t i = 0;
    while (i < count) {
      std::size_t j = i + 1;
      Count merged = counts[order[i]];
      while (j < count && std::equal(point(order[i]), point(order[i]) + d, point(order[j]))) {
        merged = plus(merged, counts[order[j]]);
        ++j;
      }
      out.coords_.insert(out.coords_.end(), point(order[i]), point(order[i]) + d);
      out.weights_.push_back(to_weight(merged));
      i = j;
    }
    return out;
  }
};

mpz_class LatticeDistribution::count_of(std::span<const std::int64_t> m) const {
  if (m.size() != static_cast<std::size_t>(n)) return 0;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto c = coefficient(mid);
    if (std::lexicographical_compare(c.begin(), c.end(), m.begin(), m.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::ranges::equal(coefficient(lo), m)) return counts[lo];
  return 0;
}

mpz_class LatticeDistribution::total() const {
  mpz_class sum = 0;
  for (const auto& c : counts) sum += c;
  return sum;
}

double WeightedPointSet::total_weight() const noexcept {
  CompensatedSum s;
  for (double w : weights_) s.add(w);
  return s.value();
}

WeightedPointSet WeightedPointSet::from_atoms(int d, std::vector<double> coords,
                                              std::vector<double> weights,
                                              Provenance provenance) {
  if (d < 1) throw ValidationError("point set dimension must be >= 1");
  if (weights.empty()) throw ValidationError("point set is empty");
  if (coords.size() != weights.size() * static_cast<std::size_t>(d)) {
    throw ValidationError("point set coordinates do not match atom count");
  }
  for (double& x : coords) {
    if (!std::isfinite(x)) throw ValidationError("non-finite point coordinate");
    x = frac(x);
  }
  CompensatedSum total;
  for (double w : weights) {
    if (!std::isfinite(w) || w <= 0.0) throw ValidationError("atom weights must be positive");
    total.add(w);
  }
  if (std::fabs(total.value() - 1.0) > 1e-9) {
    throw ValidationError("atom weights sum to " + std::to_string(total.value()) + ", not 1");
  }
  return PointSetBuilder::merge(
      d, coords, std::move(weights),
      [](double a, double b) { return a + b; }, [](double w) { return w; }, provenance);
}

double ratio_to_double(const mpz_class& num, const mpz_class& den) {
  if (sgn(num) == 0) return 0.0;
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

// --- exact convolution ---------------------------------------------------

WalkConvolution::WalkConvolution(int n, int max_k, Execution exec, std::size_t state_cap)
    : n_(n), max_k_(max_k), exec_(exec) {
  if (n < 1) throw ValidationError("walk needs at least one generator");
  if (max_k < 0) throw ValidationError("step count must be non-negative");
  const auto width = static_cast<std::size_t>(2) * static_cast<std::size_t>(max_k) + 1;
  std::size_t states = 1;
  for (int j = 0; j < n; ++j) {
    if (states > state_cap / width) {
      throw InfeasibleError("exact walk for n=" + std::to_string(n) + ", k=" +
                            std::to_string(max_k) + " needs more than " +
                            std::to_string(state_cap) +
                            " lattice states; use simulate_walk (Monte Carlo) instead");
    }
    states *= width;
  }
  strides_.assign(n, 1);
  for (int j = n - 2; j >= 0; --j) strides_[j] = strides_[j + 1] * width;
  current_.resize(states);
  next_.resize(states);
  std::vector<std::int64_t> origin(n, 0);
  current_[index_of(origin)] = 1;
}

std::size_t WalkConvolution::index_of(std::span<const std::int64_t> m) const noexcept {
  std::size_t idx = 0;
  for (int j = 0; j < n_; ++j) idx += static_cast<std::size_t>(m[j] + max_k_) * strides_[j];
  return idx;
}

void WalkConvolution::step() {
  if (k_ >= max_k_) throw ValidationError("walk convolution already at its maximum step");
  const int t = k_ + 1;
  const auto width = static_cast<std::int64_t>(2 * t + 1);
  std::int64_t box = 1;
  for (int j = 0; j < n_; ++j) box *= width;

  const bool parallel = exec_ == Execution::parallel;
#pragma omp parallel if (parallel)
  {
    std::vector<std::int64_t> m(n_);
#pragma omp for schedule(static)
    for (std::int64_t flat = 0; flat < box; ++flat) {
      std::int64_t rest = flat;
      std::int64_t l1 = 0;
      for (int j = n_ - 1; j >= 0; --j) {
        m[j] = rest % width - t;
        rest /= width;
        l1 += m[j] < 0 ? -m[j] : m[j];
      }
      // Reachable points have |m|_1 <= t with matching parity; everything
      // else in this buffer is already zero.
      if (l1 > t || ((l1 ^ t) & 1) != 0) continue;
      const std::size_t idx = index_of(m);
      mpz_class& out = next_[idx];
      out = 0;
      for (int j = 0; j < n_; ++j) {
        if (m[j] - 1 >= -max_k_) out += current_[idx - strides_[j]];
        if (m[j] + 1 <= max_k_) out += current_[idx + strides_[j]];
      }
    }
  }
  std::swap(current_, next_);
  k_ = t;
}

void WalkConvolution::advance_to(int k) {
  if (k < k_ || k > max_k_) {
    throw ValidationError("cannot advance walk convolution from k=" + std::to_string(k_) +
                          " to k=" + std::to_string(k));
  }
  while (k_ < k) step();
}

LatticeDistribution WalkConvolution::distribution() const {
  LatticeDistribution dist;
  dist.k = k_;
  dist.n = n_;
  mpz_ui_pow_ui(dist.denominator.get_mpz_t(), 2UL * static_cast<unsigned long>(n_),
                static_cast<unsigned long>(k_));
  const auto width = static_cast<std::int64_t>(2 * k_ + 1);
  std::int64_t box = 1;
  for (int j = 0; j < n_; ++j) box *= width;
  std::vector<std::int64_t> m(n_);
  for (std::int64_t flat = 0; flat < box; ++flat) {
    std::int64_t rest = flat;
    for (int j = n_ - 1; j >= 0; --j) {
      m[j] = rest % width - k_;
      rest /= width;
    }
    const mpz_class& c = current_[index_of(m)];
    if (sgn(c) == 0) continue;
    dist.coeffs.insert(dist.coeffs.end(), m.begin(), m.end());
    dist.counts.push_back(c);
  }
  return dist;
}

LatticeDistribution exact_walk_distribution(const GeneratorMatrix& g, int k, Execution exec,
                                            std::size_t state_cap) {
  WalkConvolution conv(g.n(), k, exec, state_cap);
  conv.advance_to(k);
  return conv.distribution();
}

// --- projection ------------------------------------------------------------

std::vector<double> torus_point(const GeneratorMatrix& g, std::span<const std::int64_t> m) {
  std::vector<double> p(g.d());
  const double* base = g.entries().data();
  for (int i = 0; i < g.d(); ++i) {
    p[i] = combination_residue(m, base + i, static_cast<std::size_t>(g.d())).fractional();
  }
  return p;
}

namespace {

std::vector<double> project_coeffs(const GeneratorMatrix& g, std::span<const std::int64_t> coeffs,
                                   std::size_t count) {
  const auto d = static_cast<std::size_t>(g.d());
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<double> coords(count * d);
  const double* base = g.entries().data();
#pragma omp parallel for schedule(static) if (count > 4096)
  for (std::size_t a = 0; a < count; ++a) {
    std::span<const std::int64_t> m = coeffs.subspan(a * n, n);
    for (std::size_t i = 0; i < d; ++i) {
      coords[a * d + i] = combination_residue(m, base + i, d).fractional();
    }
  }
  return coords;
}

}  // namespace

WeightedPointSet project_to_torus(const LatticeDistribution& dist, const GeneratorMatrix& g) {
  if (dist.n != g.n()) {
    throw ValidationError("distribution has n=" + std::to_string(dist.n) +
                          " but the generator matrix has n=" + std::to_string(g.n()));
  }
  const auto coords = project_coeffs(g, dist.coeffs, dist.size());
  const mpz_class& den = dist.denominator;
  return PointSetBuilder::merge(
      g.d(), coords, dist.counts,
      [](const mpz_class& a, const mpz_class& b) { return mpz_class(a + b); },
      [&den](const mpz_class& c) { return ratio_to_double(c, den); }, Provenance::exact);
}

// --- Monte Carlo -------------------------------------------------------------

std::vector<std::int64_t> simulate_trial(int n, int k, std::uint64_t seed, std::uint64_t trial) {
  std::vector<std::int64_t> m(n, 0);
  CounterRng rng = CounterRng::stream(seed, trial);
  const auto choices = static_cast<std::uint64_t>(2 * n);
  for (int s = 0; s < k; ++s) {
    const std::uint64_t r = rng.below(choices);
    m[r >> 1] += (r & 1) ? -1 : 1;
  }
  return m;
}

WeightedPointSet simulate_walk(const GeneratorMatrix& g, int k, std::int64_t trials,
                               std::uint64_t seed, Execution exec) {
  if (trials < 1) throw ValidationError("simulate_walk needs trials >= 1");
  if (k < 0) throw ValidationError("step count must be non-negative");
  const auto n = static_cast<std::size_t>(g.n());
  const auto count = static_cast<std::size_t>(trials);
  std::vector<std::int64_t> ends(count * n, 0);
  const auto choices = static_cast<std::uint64_t>(2 * n);

#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (std::size_t t = 0; t < count; ++t) {
    CounterRng rng = CounterRng::stream(seed, t);
    std::int64_t* m = ends.data() + t * n;
    for (int s = 0; s < k; ++s) {
      const std::uint64_t r = rng.below(choices);
      m[r >> 1] += (r & 1) ? -1 : 1;
    }
  }

  // Collapse identical coefficient vectors before projecting.
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row = [&](std::size_t t) { return ends.begin() + t * n; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + n, row(b), row(b) + n);
  });
  std::vector<std::int64_t> distinct;
  std::vector<std::int64_t> visits;
  for (std::size_t i = 0; i < count;) {
    std::size_t j = i + 1;
    while (j < count && std::equal(row(order[i]), row(order[i]) + n, row(order[j]))) ++j;
    distinct.insert(distinct.end(), row(order[i]), row(order[i]) + n);
    visits.push_back(static_cast<std::int64_t>(j - i));
    i = j;
  }

  const auto coords = project_coeffs(g, distinct, visits.size());
  const auto total = static_cast<double>(trials);
  return PointSetBuilder::merge(
      g.d(), coords, std::move(visits), [](std::int64_t a, std::int64_t b) { return a + b; },
      [total](std::int64_t v) { return static_cast<double>(v) / total; },
      Provenance::empirical);
}

}  // namespace torwalk
