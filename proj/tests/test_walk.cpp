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
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "torwalk/errors.hpp"
#include "torwalk/generators.hpp"
#include "torwalk/residue.hpp"
#include "torwalk/walk.hpp"

using torwalk::Execution;
using torwalk::exact_walk_distribution;
using torwalk::load_generators;
using torwalk::WeightedPointSet;

namespace {

// Weight of the atom within tol of x (d = 1); 0 if there is none.
double weight_near(const WeightedPointSet& p, double x, double tol = 1e-15) {
  double w = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double y = p.point(i)[0];
    const double gap = std::min(std::abs(y - x), 1.0 - std::abs(y - x));
    if (gap <= tol) w += p.weight(i);
  }
  return w;
}

void check_against_paths(const torwalk::LatticeDistribution& dist) {
  const auto paths = torwalk::testing::enumerate_paths(dist.n, dist.k);
  REQUIRE(dist.size() == paths.size());
  std::size_t i = 0;
  for (const auto& [m, c] : paths) {
    auto got = dist.coefficient(i);
    CHECK(std::vector<std::int64_t>(got.begin(), got.end()) == m);
    CHECK(dist.counts[i] == mpz_class(static_cast<unsigned long>(c)));
    ++i;
  }
}

}  // namespace

TEST_CASE("zero steps is the point mass at the origin") {
  auto g = load_generators({{0.3}});
  auto dist = exact_walk_distribution(g, 0);
  REQUIRE(dist.size() == 1);
  CHECK(dist.counts[0] == 1);
  CHECK(dist.denominator == 1);
  auto p = torwalk::project_to_torus(dist, g);
  REQUIRE(p.size() == 1);
  CHECK(p.point(0)[0] == 0.0);
  CHECK(p.weight(0) == 1.0);
}

TEST_CASE("small lattice distributions") {
  auto g1 = load_generators({{0.3}});
  auto d1 = exact_walk_distribution(g1, 2);
  CHECK(d1.denominator == 4);
  std::vector<std::int64_t> m{-2};
  CHECK(d1.count_of(m) == 1);
  m = {0};
  CHECK(d1.count_of(m) == 2);
  m = {2};
  CHECK(d1.count_of(m) == 1);
  m = {1};
  CHECK(d1.count_of(m) == 0);

  auto g2 = load_generators({{0.1}, {0.2}});
  auto d2 = exact_walk_distribution(g2, 1);
  CHECK(d2.size() == 4);
  CHECK(d2.denominator == 4);
  for (const auto& c : d2.counts) CHECK(c == 1);
}

TEST_CASE("counts agree with path enumeration") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k <= (n == 3 ? 4 : 7); ++k) {
      auto g = torwalk::builtin_generators(torwalk::parse_family("random"), n, 1, 5);
      check_against_paths(exact_walk_distribution(g, k));
    }
  }
}

TEST_CASE("kernel agrees with the map-based reference") {
  for (int n = 1; n <= 3; ++n) {
    const int k = n == 3 ? 9 : 25;
    auto ref = torwalk::reference::walk_distribution(n, k);
    auto g = torwalk::builtin_generators(torwalk::parse_family("random"), n, 1, 1);
    for (auto exec : {Execution::serial, Execution::parallel}) {
      auto dist = exact_walk_distribution(g, k, exec);
      CHECK(dist.coeffs == ref.coeffs);
      CHECK(dist.counts == ref.counts);
      CHECK(dist.denominator == ref.denominator);
    }
  }
}

TEST_CASE("normalization and symmetry") {
  for (int n = 1; n <= 3; ++n) {
    torwalk::WalkConvolution conv(n, 12);
    for (int k = 1; k <= 12; ++k) {
      conv.step();
      auto dist = conv.distribution();
      mpz_class expected;
      mpz_ui_pow_ui(expected.get_mpz_t(), 2 * n, k);
      CHECK(dist.total() == expected);
      CHECK(dist.denominator == expected);
      for (std::size_t i = 0; i < dist.size(); ++i) {
        auto m = dist.coefficient(i);
        std::vector<std::int64_t> neg(m.begin(), m.end());
        std::int64_t l1 = 0;
        for (auto& x : neg) {
          l1 += std::abs(x);
          x = -x;
        }
        CHECK(dist.count_of(neg) == dist.counts[i]);
        CHECK(l1 <= k);
        CHECK((k - l1) % 2 == 0);
      }
    }
  }
}

TEST_CASE("stepping past the configured maximum is an error") {
  torwalk::WalkConvolution conv(1, 2);
  conv.advance_to(2);
  CHECK(conv.k() == 2);
  CHECK_THROWS_AS(conv.step(), torwalk::ValidationError);
  CHECK_THROWS_AS(torwalk::WalkConvolution(3, 1000), torwalk::InfeasibleError);
}

TEST_CASE("torus images") {
  auto golden = torwalk::builtin_generators(torwalk::parse_family("golden"), 1, 1);
  auto p = torwalk::project_to_torus(exact_walk_distribution(golden, 2), golden);
  REQUIRE(p.size() == 3);
  CHECK(weight_near(p, 0.0) == 0.5);
  CHECK(weight_near(p, 0.2360679774997896964) == 0.25);
  CHECK(weight_near(p, 0.7639320225002103036) == 0.25);

  // Half-turn generator: every even-length walk ends at 0.
  auto half = load_generators({{0.5}});
  auto ph = torwalk::project_to_torus(exact_walk_distribution(half, 2), half);
  REQUIRE(ph.size() == 1);
  CHECK(ph.point(0)[0] == 0.0);
  CHECK(ph.weight(0) == 1.0);

  auto third = load_generators({{1.0 / 3.0}});
  auto pt = torwalk::project_to_torus(exact_walk_distribution(third, 2), third);
  REQUIRE(pt.size() == 3);
  CHECK(weight_near(pt, 0.0) == 0.5);
  CHECK(weight_near(pt, 1.0 / 3.0) == 0.25);
  CHECK(weight_near(pt, 2.0 / 3.0) == 0.25);
}

TEST_CASE("dyadic generators land exactly on the lattice") {
  auto g = torwalk::builtin_generators(torwalk::parse_family("rational(4)"), 2, 2);
  for (int k = 1; k <= 12; ++k) {
    auto p = torwalk::project_to_torus(exact_walk_distribution(g, k), g);
    CHECK(p.size() <= 16);
    for (double x : p.coords()) CHECK(x * 4 == std::floor(x * 4));
    CHECK(p.total_weight() == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("projection merges coincident lattice points") {
  // Two identical generators: (1,-1) and (-1,1) and (0,0) share an image.
  auto g = load_generators({{0.2}, {0.2}});
  auto p = torwalk::project_to_torus(exact_walk_distribution(g, 2), g);
  // Image is the single-generator walk of length 2 under alpha = 0.2.
  CHECK(p.size() == 3);
  CHECK(weight_near(p, 0.0) == 0.5);
  CHECK(weight_near(p, 0.4) == 0.25);
  CHECK(weight_near(p, 0.6) == 0.25);
}

TEST_CASE("exact ratio conversion") {
  CHECK(torwalk::ratio_to_double(1, 4) == 0.25);
  CHECK(torwalk::ratio_to_double(1, 3) == 1.0 / 3.0);
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 5000);
  CHECK(torwalk::ratio_to_double(big / 3, big) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(torwalk::ratio_to_double(0, big) == 0.0);
}

TEST_CASE("point set construction") {
  auto p = WeightedPointSet::from_atoms(1, {0.25, 1.25, -0.5}, {0.25, 0.25, 0.5});
  CHECK(p.size() == 2);
  CHECK(weight_near(p, 0.25) == 0.5);
  CHECK(weight_near(p, 0.5) == 0.5);
  CHECK_THROWS_AS(WeightedPointSet::from_atoms(1, {0.1}, {0.5}), torwalk::ValidationError);
  CHECK_THROWS_AS(WeightedPointSet::from_atoms(1, {0.1, 0.2}, {1.5, -0.5}),
                  torwalk::ValidationError);
  CHECK_THROWS_AS(WeightedPointSet::from_atoms(2, {0.1, 0.2, 0.3}, {1.0}),
                  torwalk::ValidationError);
  CHECK_THROWS_AS(WeightedPointSet::from_atoms(1, {NAN}, {1.0}), torwalk::ValidationError);
}

TEST_CASE("Monte Carlo trivial cases") {
  auto g = load_generators({{0.3}});
  auto p0 = torwalk::simulate_walk(g, 0, 100, 1);
  REQUIRE(p0.size() == 1);
  CHECK(p0.point(0)[0] == 0.0);
  CHECK(p0.weight(0) == 1.0);

  auto half = load_generators({{0.5}});
  auto p1 = torwalk::simulate_walk(half, 1, 1000, 3);
  REQUIRE(p1.size() == 1);
  CHECK(p1.point(0)[0] == 0.5);
  CHECK(p1.weight(0) == 1.0);

  CHECK_THROWS_AS(torwalk::simulate_walk(g, 1, 0, 1), torwalk::ValidationError);
}

TEST_CASE("Monte Carlo matches the exact law") {
  auto golden = torwalk::builtin_generators(torwalk::parse_family("golden"), 1, 1);
  auto exact = torwalk::project_to_torus(exact_walk_distribution(golden, 4), golden);
  auto mc = torwalk::simulate_walk(golden, 4, 1'000'000, 2024);
  CHECK(mc.size() == exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    CHECK(std::abs(weight_near(mc, exact.point(i)[0]) - exact.weight(i)) < 3e-3);
  }
}

TEST_CASE("Monte Carlo is reproducible and schedule independent") {
  auto g = torwalk::builtin_generators(torwalk::parse_family("random"), 2, 2, 8);
  auto a = torwalk::simulate_walk(g, 15, 20000, 77, Execution::parallel);
  auto b = torwalk::simulate_walk(g, 15, 20000, 77, Execution::serial);
  auto c = torwalk::reference::simulate_walk(g, 15, 20000, 77);
  CHECK(std::vector<double>(a.coords().begin(), a.coords().end()) ==
        std::vector<double>(b.coords().begin(), b.coords().end()));
  CHECK(std::vector<double>(a.weights().begin(), a.weights().end()) ==
        std::vector<double>(b.weights().begin(), b.weights().end()));
  CHECK(std::vector<double>(a.coords().begin(), a.coords().end()) ==
        std::vector<double>(c.coords().begin(), c.coords().end()));
  auto d = torwalk::simulate_walk(g, 15, 20000, 78);
  CHECK_FALSE(std::vector<double>(a.coords().begin(), a.coords().end()) ==
              std::vector<double>(d.coords().begin(), d.coords().end()));

  // A single trial can be regenerated in isolation.
  auto m = torwalk::simulate_trial(2, 15, 77, 123);
  std::int64_t l1 = std::abs(m[0]) + std::abs(m[1]);
  CHECK(l1 <= 15);
  CHECK(l1 % 2 == 1);
}

TEST_CASE("double-double residues") {
  std::vector<std::int64_t> c{5};
  std::vector<double> a{0.3};
  // 5 * fl(0.3) lies just below 1/2; naive multiplication rounds up to 0.5.
  CHECK(torwalk::combination_residue(c, a).fractional() == 0.49999999999999994);
  CHECK(5 * 0.3 - 1.0 == 0.5);
  c = {9};
  CHECK(torwalk::combination_residue(c, a).fractional() == 0.7);
  c = {-1};
  a = {0.25};
  CHECK(torwalk::combination_residue(c, a).fractional() == 0.75);
  c = {1, -1};
  a = {0.7, 0.7};
  CHECK(torwalk::combination_residue(c, a).fractional() == 0.0);
  CHECK(torwalk::frac(-0.0) == 0.0);
  CHECK_FALSE(std::signbit(torwalk::frac(-0.0)));
  CHECK(torwalk::frac(-1e-300) == 0.0);
}
