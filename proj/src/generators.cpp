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

#include "torwalk/generators.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <set>

#include "torwalk/errors.hpp"
#include "torwalk/residue.hpp"
#include "torwalk/rng.hpp"

namespace torwalk {

GeneratorMatrix GeneratorMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ValidationError("generator list is empty");
  const std::size_t d = rows.front().size();
  if (d == 0) throw ValidationError("generator rows must have at least one coordinate");

  GeneratorMatrix g;
  g.n_ = static_cast<int>(rows.size());
  g.d_ = static_cast<int>(d);
  g.entries_.reserve(rows.size() * d);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != d) {
      throw ValidationError("ragged generator rows: row " + std::to_string(j + 1) +
                            " has " + std::to_string(rows[j].size()) +
                            " coordinates, expected " + std::to_string(d));
    }
    for (double v : rows[j]) {
      if (!std::isfinite(v)) {
        throw ValidationError("non-finite generator entry in row " +
                              std::to_string(j + 1));
      }
      g.entries_.push_back(frac(v));
    }
  }

  std::set<std::vector<double>> seen;
  for (int j = 0; j < g.n_; ++j) {
    auto r = g.row(j);
    bool zero = true;
    for (double v : r) zero = zero && v == 0.0;
    g.warnings_.zero_row = g.warnings_.zero_row || zero;
    if (!seen.emplace(r.begin(), r.end()).second) g.warnings_.duplicate_rows = true;
  }
  return g;
}

std::vector<std::vector<double>> GeneratorMatrix::rows() const {
  std::vector<std::vector<double>> out;
  out.reserve(n_);
  for (int j = 0; j < n_; ++j) out.emplace_back(row(j).begin(), row(j).end());
  return out;
}

GeneratorMatrix load_generators(const std::vector<std::vector<double>>& rows) {
  return GeneratorMatrix::from_rows(rows);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view argument_of(std::string_view text, std::string_view name) {
  auto rest = trim(text.substr(name.size()));
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
    throw ValidationError("family '" + std::string(name) + "' needs a parameter, e.g. " +
                          std::string(name) + "(3)");
  }
  return trim(rest.substr(1, rest.size() - 2));
}

}  // namespace

FamilySpec parse_family(std::string_view text) {
  text = trim(text);
  FamilySpec spec;
  if (text == "golden") {
    spec.family = Family::golden;
  } else if (text == "sqrt_primes") {
    spec.family = Family::sqrt_primes;
  } else if (text == "random") {
    spec.family = Family::random;
  } else if (text.starts_with("rational")) {
    spec.family = Family::rational;
    auto arg = argument_of(text, "rational");
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), spec.q);
    if (ec != std::errc() || p != arg.data() + arg.size() || spec.q < 1) {
      throw ValidationError("rational(q) needs a positive integer q, got '" +
                            std::string(arg) + "'");
    }
  } else if (text.starts_with("diagonal")) {
    spec.family = Family::diagonal;
    auto arg = std::string(argument_of(text, "diagonal"));
    std::size_t used = 0;
    try {
      spec.x = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || !std::isfinite(spec.x)) {
      throw ValidationError("diagonal(x) needs a finite real x, got '" + arg + "'");
    }
  } else {
    throw ValidationError("unknown generator family '" + std::string(text) + "'");
  }
  return spec;
}

std::string family_name(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::golden: return "golden";
    case Family::sqrt_primes: return "sqrt_primes";
    case Family::random: return "random";
    case Family::rational: return "rational(" + std::to_string(spec.q) + ")";
    case Family::diagonal: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "diagonal(%.17g)", spec.x);
      return buf;
    }
  }
  return "?";
}

std::vector<std::int64_t> first_primes(std::size_t count) {
  std::vector<std::int64_t> primes;
  for (std::int64_t c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (std::int64_t p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

GeneratorMatrix builtin_generators(const FamilySpec& spec, int n, int d,
                                   std::optional<std::uint64_t> seed) {
  if (n < 1 || d < 1) throw ValidationError("builtin generators need n >= 1 and d >= 1");
  const auto nd = static_cast<std::size_t>(n) * static_cast<std::size_t>(d);
  std::vector<std::vector<double>> rows(n, std::vector<double>(d));
  switch (spec.family) {
    case Family::golden:
      if (nd != 1) throw ValidationError("golden family is 1x1 only");
      rows[0][0] = (std::sqrt(5.0) - 1.0) / 2.0;
      break;
    case Family::sqrt_primes: {
      const auto primes = first_primes(nd);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < d; ++i)
          rows[j][i] = std::sqrt(static_cast<double>(primes[j * d + i]));
      break;
    }
    case Family::rational: {
      if (spec.q < 1) throw ValidationError("rational(q) needs q >= 1");
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < d; ++i) {
          const std::int64_t t = static_cast<std::int64_t>(j) * d + i;
          const std::int64_t num = spec.q == 1 ? 0 : 1 + t % (spec.q - 1);
          rows[j][i] = static_cast<double>(num) / static_cast<double>(spec.q);
        }
      }
      break;
    }
    case Family::diagonal:
      if (n != 1) throw ValidationError("diagonal(x) family has a single row (n = 1)");
      for (int i = 0; i < d; ++i) rows[0][i] = spec.x;
      break;
    case Family::random: {
      if (!seed) throw ValidationError("random family requires a seed");
      CounterRng rng = CounterRng::stream(*seed, 0);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < d; ++i) rows[j][i] = rng.uniform();
      break;
    }
  }
  return GeneratorMatrix::from_rows(rows);
}

}  // namespace torwalk
