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

#include <map>

#include "torwalk/errors.hpp"
#include "torwalk/walk.hpp"

namespace torwalk::reference {

LatticeDistribution walk_distribution(int n, int k) {
  if (n < 1 || k < 0) throw ValidationError("walk_distribution needs n >= 1, k >= 0");
  std::map<std::vector<std::int64_t>, mpz_class> cur;
  cur[std::vector<std::int64_t>(n, 0)] = 1;
  for (int s = 0; s < k; ++s) {
    std::map<std::vector<std::int64_t>, mpz_class> next;
    for (const auto& [m, c] : cur) {
      for (int j = 0; j < n; ++j) {
        for (int sign : {1, -1}) {
          auto to = m;
          to[j] += sign;
          next[to] += c;
        }
      }
    }
    cur = std::move(next);
  }
  LatticeDistribution dist;
  dist.k = k;
  dist.n = n;
  mpz_ui_pow_ui(dist.denominator.get_mpz_t(), 2UL * static_cast<unsigned long>(n),
                static_cast<unsigned long>(k));
  for (const auto& [m, c] : cur) {
    dist.coeffs.insert(dist.coeffs.end(), m.begin(), m.end());
    dist.counts.push_back(c);
  }
  return dist;
}

WeightedPointSet simulate_walk(const GeneratorMatrix& g, int k, std::int64_t trials,
                               std::uint64_t seed) {
  std::map<std::vector<double>, std::int64_t> visits;
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto m = simulate_trial(g.n(), k, seed, static_cast<std::uint64_t>(t));
    ++visits[torus_point(g, m)];
  }
  std::vector<double> coords;
  std::vector<double> weights;
  for (const auto& [p, v] : visits) {
    coords.insert(coords.end(), p.begin(), p.end());
    weights.push_back(static_cast<double>(v) / static_cast<double>(trials));
  }
  return WeightedPointSet::from_atoms(g.d(), std::move(coords), std::move(weights),
                                      Provenance::empirical);
}

}  // namespace torwalk::reference
