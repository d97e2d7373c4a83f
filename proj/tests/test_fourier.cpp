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
#include <optional>
#include <vector>

#include "doctest.h"
#include "torwalk/discrepancy.hpp"
#include "torwalk/errors.hpp"
#include "torwalk/fourier.hpp"
#include "torwalk/generators.hpp"
#include "torwalk/rng.hpp"
#include "torwalk/walk.hpp"

using torwalk::Frequency;
using torwalk::load_generators;
using torwalk::qhat;
using torwalk::single_h_lower_bound;

namespace {

const double kPi = std::numbers::pi;

torwalk::GeneratorMatrix golden() {
  return torwalk::builtin_generators(torwalk::parse_family("golden"), 1, 1);
}

torwalk::GeneratorMatrix sqrt_primes(int n, int d) {
  return torwalk::builtin_generators(torwalk::parse_family("sqrt_primes"), n, d);
}

double exact_discrepancy(const torwalk::GeneratorMatrix& g, int k) {
  auto p = torwalk::project_to_torus(torwalk::exact_walk_distribution(g, k), g);
  return torwalk::discrepancy_exact(p).value;
}

}  // namespace

TEST_CASE("characteristic function values") {
  Frequency h{1};
  CHECK(qhat(load_generators({{0.5}}), h) == -1.0);
  CHECK(std::abs(qhat(load_generators({{0.25}}), h)) < 1e-16);
  // cos(2 pi alpha) for the golden ratio conjugate, evaluated to 30 digits.
  CHECK(std::abs(qhat(golden(), h) - (-0.73736887807831990)) < 1e-15);

  Frequency zero{0, 0};
  CHECK(qhat(sqrt_primes(3, 2), zero) == 1.0);
  CHECK(qhat(load_generators({{0.1, 0.2}, {0.3, 0.4}}), zero) == 1.0);

  // Large frequencies keep full accuracy: 10^9 * fl(0.5) is an integer.
  Frequency big{1'000'000'000};
  CHECK(qhat(load_generators({{0.5}}), big) == 1.0);
}

TEST_CASE("characteristic function is even and bounded") {
  auto g = sqrt_primes(2, 2);
  for (std::int64_t a = -6; a <= 6; ++a) {
    for (std::int64_t b = -6; b <= 6; ++b) {
      Frequency h{a, b}, neg{-a, -b};
      const double v = qhat(g, h);
      CHECK(v == qhat(g, neg));
      CHECK(std::abs(v) <= 1.0);
    }
  }
}

TEST_CASE("frequency weight") {
  CHECK(torwalk::weight_R(Frequency{3, 0, -2}) == 6);
  CHECK(torwalk::weight_R(Frequency{0, 0}) == 1);
  CHECK(torwalk::weight_R(Frequency{1, 1, 1}) == 1);
  CHECK(torwalk::weight_R(Frequency{-7}) == 7);
  CHECK_THROWS_AS(torwalk::weight_R(Frequency{1LL << 40, 1LL << 40}), torwalk::ValidationError);
}

TEST_CASE("single frequency lower bound") {
  Frequency h{1};
  CHECK(single_h_lower_bound(golden(), 0, h) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(single_h_lower_bound(load_generators({{0.5}}), 2, h) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-15));
  // |cos(2 pi alpha)|^3 / pi with alpha the golden ratio conjugate.
  CHECK(std::abs(single_h_lower_bound(golden(), 3, h) - 0.12761582659544040) < 1e-14);

  Frequency h2{2, 0};
  auto g2 = sqrt_primes(1, 2);
  CHECK(single_h_lower_bound(g2, 1, h2) ==
        doctest::Approx(std::abs(qhat(g2, h2)) / (kPi * kPi * 2)).epsilon(1e-14));

  CHECK_THROWS_AS(single_h_lower_bound(golden(), 1, Frequency{0}), torwalk::ValidationError);
  CHECK_THROWS_AS(single_h_lower_bound(golden(), 1, h, std::vector<double>{0.0}),
                  torwalk::ValidationError);
  CHECK_THROWS_AS(single_h_lower_bound(golden(), 1, h, std::vector<double>{0.6}),
                  torwalk::ValidationError);
  CHECK_THROWS_AS(single_h_lower_bound(golden(), 1, h, std::vector<double>{0.1, 0.1}),
                  torwalk::ValidationError);
}

TEST_CASE("explicit radii reproduce the default schedule") {
  auto g = sqrt_primes(2, 3);
  for (Frequency h : {Frequency{1, 0, 0}, Frequency{-2, 3, 0}, Frequency{0, 0, 5},
                      Frequency{4, -1, 2}}) {
    std::vector<double> r;
    for (auto x : h) r.push_back(x == 0 ? 1.0 / (2 * kPi) : 1.0 / (4.0 * std::abs(x)));
    for (int k : {0, 1, 7}) {
      CHECK(single_h_lower_bound(g, k, h, r) ==
            doctest::Approx(single_h_lower_bound(g, k, h)).epsilon(1e-13));
    }
  }
}

TEST_CASE("best frequency over a box") {
  auto half = load_generators({{0.5}});
  auto r = torwalk::best_fourier_lower_bound(half, 1, 2);
  CHECK(r.value == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  // h = -1 and h = 1 tie; the lexicographically smaller one is reported.
  CHECK(r.h == Frequency{-1});

  auto zero = torwalk::best_fourier_lower_bound(golden(), 0, 1);
  CHECK(zero.value == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(zero.h == Frequency{-1});

  // Exhaustive over the sixteen nonzero |h| <= 8, evaluated to 30 digits.
  auto g10 = torwalk::best_fourier_lower_bound(golden(), 10, 8);
  CHECK(std::abs(g10.value - 0.068216430500075958) < 1e-14);
  CHECK(g10.h == Frequency{-4});
  auto ref = torwalk::reference::best_fourier_lower_bound(golden(), 10, 8);
  CHECK(ref.value == doctest::Approx(g10.value).epsilon(1e-13));
  CHECK(ref.h == g10.h);

  CHECK_THROWS_AS(torwalk::best_fourier_lower_bound(golden(), 1, 0), torwalk::ValidationError);
}

TEST_CASE("best frequency bound grows with the box") {
  auto g = sqrt_primes(1, 2);
  double previous = 0.0;
  for (int hmax = 1; hmax <= 12; ++hmax) {
    const double v = torwalk::best_fourier_lower_bound(g, 6, hmax).value;
    CHECK(v >= previous);
    previous = v;
  }
}

TEST_CASE("ETK bound values") {
  CHECK(torwalk::etk_upper_bound(load_generators({{0.5}}), 3, 1) == doctest::Approx(4.5));
  CHECK(torwalk::etk_upper_bound(load_generators({{0.25}}), 1, 1) == doctest::Approx(1.5));
  CHECK_THROWS_AS(torwalk::etk_upper_bound(golden(), 1, 0), torwalk::ValidationError);
  CHECK_THROWS_AS(torwalk::etk_upper_bound(sqrt_primes(1, 3), 1, 1000),
                  torwalk::InfeasibleError);

  for (std::int64_t m : {1, 3, 7, 20}) {
    const double fast = torwalk::etk_upper_bound(sqrt_primes(2, 2), 9, m);
    const double slow = torwalk::reference::etk_upper_bound(sqrt_primes(2, 2), 9, m);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-13));
  }
}

TEST_CASE("Fourier bounds bracket the exact discrepancy") {
  struct Case {
    torwalk::GeneratorMatrix g;
    int k;
  };
  std::vector<Case> cases{{golden(), 100}, {golden(), 17}, {sqrt_primes(1, 2), 6},
                          {sqrt_primes(2, 2), 5}, {load_generators({{0.5}}), 4}};
  for (const auto& c : cases) {
    const double exact = exact_discrepancy(c.g, c.k);
    for (std::int64_t m : {1, 2, 7}) CHECK(torwalk::etk_upper_bound(c.g, c.k, m) >= exact);
    CHECK(torwalk::best_fourier_lower_bound(c.g, c.k, 6).value <= exact);
    // Arbitrary admissible radii also give valid lower bounds.
    torwalk::CounterRng rng = torwalk::CounterRng::stream(c.k, 1);
    for (int trial = 0; trial < 20; ++trial) {
      Frequency h(c.g.d());
      for (auto& x : h) x = static_cast<std::int64_t>(rng.below(9)) - 4;
      if (torwalk::is_zero(h)) h[0] = 1;
      std::vector<double> r(c.g.d());
      for (auto& x : r) x = 0.5 * (1.0 - rng.uniform());
      CHECK(single_h_lower_bound(c.g, c.k, h, r) <= exact);
    }
  }
}

TEST_CASE("atom sums reproduce the characteristic function") {
  auto g = sqrt_primes(1, 2);
  for (int k : {1, 5, 12}) {
    auto p = torwalk::project_to_torus(torwalk::exact_walk_distribution(g, k), g);
    for (std::int64_t a = -5; a <= 5; ++a) {
      for (std::int64_t b = -5; b <= 5; ++b) {
        Frequency h{a, b};
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
          auto x = p.point(i);
          s += p.weight(i) * std::cos(2 * kPi * (a * x[0] + b * x[1]));
        }
        CHECK(std::abs(s - std::pow(qhat(g, h), k)) <= 1e-9);
      }
    }
  }
}
