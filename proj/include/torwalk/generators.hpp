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
#include <string>
#include <string_view>
#include <vector>

namespace torwalk {

struct GeneratorWarnings {
  bool zero_row = false;        // some alpha_j is the zero vector
  bool duplicate_rows = false;  // two rows are bit-identical after reduction

  bool any() const noexcept { return zero_row || duplicate_rows; }
  friend bool operator==(const GeneratorWarnings&, const GeneratorWarnings&) = default;
};

// The n x d matrix A whose rows alpha_1..alpha_n generate the walk. Entries
// are reduced into [0, 1) on construction; the object is immutable.
class GeneratorMatrix {
 public:
  // Validates and reduces. Throws ValidationError on empty, ragged or
  // non-finite input. Zero and duplicate rows are accepted with a warning.
  static GeneratorMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  double operator()(int j, int i) const noexcept {
    return entries_[static_cast<std::size_t>(j) * d_ + i];
  }
  std::span<const double> row(int j) const noexcept {
    return {entries_.data() + static_cast<std::size_t>(j) * d_,
            static_cast<std::size_t>(d_)};
  }
  // Row-major n*d entries.
  std::span<const double> entries() const noexcept { return entries_; }
  const GeneratorWarnings& warnings() const noexcept { return warnings_; }

  std::vector<std::vector<double>> rows() const;

  friend bool operator==(const GeneratorMatrix&, const GeneratorMatrix&) = default;

 private:
  GeneratorMatrix() = default;

  int n_ = 0;
  int d_ = 0;
  std::vector<double> entries_;
  GeneratorWarnings warnings_;
};

GeneratorMatrix load_generators(const std::vector<std::vector<double>>& rows);

enum class Family { golden, sqrt_primes, rational, diagonal, random };

struct FamilySpec {
  Family family = Family::golden;
  std::int64_t q = 0;  // rational(q)
  double x = 0.0;      // diagonal(x)
};

// Accepts "golden", "sqrt_primes", "rational(3)", "diagonal(0.25)", "random".
FamilySpec parse_family(std::string_view text);
std::string family_name(const FamilySpec& spec);

// Built-in fixture families.
//   golden       1x1 matrix [[frac((1+sqrt 5)/2)]]
//   sqrt_primes  entry (j,i) = frac(sqrt(p_{j*d+i})) over the first n*d primes
//   rational(q)  nonzero multiples of 1/q, deterministic by position
//   diagonal(x)  single row (x, ..., x)
//   random       uniform entries from the counter-based generator
GeneratorMatrix builtin_generators(const FamilySpec& spec, int n, int d,
                                   std::optional<std::uint64_t> seed = std::nullopt);

// First `count` primes.
std::vector<std::int64_t> first_primes(std::size_t count);

}  // namespace torwalk
