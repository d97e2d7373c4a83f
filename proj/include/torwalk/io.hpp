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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "torwalk/diophantine.hpp"
#include "torwalk/discrepancy.hpp"
#include "torwalk/fourier.hpp"
#include "torwalk/generators.hpp"
#include "torwalk/theorem_bounds.hpp"
#include "torwalk/walk.hpp"

namespace torwalk::io {

// "%.17g": enough digits to round-trip any double.
std::string format_double(double x);

// Matrix text: one row per line, fields separated by commas and/or
// whitespace, '#' starts a comment line, blank lines are skipped.
std::vector<std::vector<double>> parse_matrix_text(std::string_view text);
std::string format_matrix(const GeneratorMatrix& g);
GeneratorMatrix read_matrix_file(const std::string& path);

// Point-set CSV: one atom per line, d coordinates then the weight.
std::string format_point_csv(const WeightedPointSet& p);
WeightedPointSet parse_point_csv(std::string_view text);
WeightedPointSet read_point_file(const std::string& path);

// --builtin argument: family[:param...], params being a shape "NxD",
// "seed=S", or a bare family parameter, e.g. "golden", "rational:3",
// "sqrt_primes:2x2", "random:2x2:seed=5", "diagonal(0.3):1x3".
struct BuiltinRequest {
  FamilySpec spec;
  int n = 1;
  int d = 1;
  std::optional<std::uint64_t> seed;
};
BuiltinRequest parse_builtin(std::string_view text);
GeneratorMatrix resolve_builtin(const BuiltinRequest& req,
                                std::optional<std::uint64_t> fallback_seed = std::nullopt);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

nlohmann::ordered_json to_json(const DiscrepancyResult& r);
nlohmann::ordered_json to_json(const BoundReport& r);
nlohmann::ordered_json to_json(const BadApproxEstimate& e);
nlohmann::ordered_json to_json(const WeightedPointSet& p);

}  // namespace torwalk::io
