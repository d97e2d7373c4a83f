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
#include "torwalk/generators.hpp"
#include "torwalk/summation.hpp"
#include "torwalk/theorem_bounds.hpp"

namespace torwalk {

inline constexpr const char* kToolVersion = "0.1.0";

// How each row's distribution and discrepancy are obtained.
//   auto   exact walk when the lattice fits, else Monte Carlo; exact
//          discrepancy up to its atom cap, else the grid estimator
//   exact  exact walk and exact discrepancy, InfeasibleError otherwise
//   mc     Monte Carlo walk always
//   grid   exact walk when it fits, grid discrepancy always
enum class MethodPolicy { automatic, exact, mc, grid };

struct ScanConfig {
  std::optional<std::string> matrix_path;
  std::optional<std::string> builtin;
  std::vector<std::int64_t> k_schedule;
  MethodPolicy policy = MethodPolicy::automatic;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  int resolution = 512;
  std::optional<double> ca;
  std::int64_t hmax = 1000;
  std::optional<std::string> out_dir;
  std::string format = "json";
  bool svg = false;
};

// "16,32", "1..50", "2^4..2^13" and comma-separated mixtures; sorted and
// de-duplicated. Empty or non-positive schedules are rejected.
std::vector<std::int64_t> parse_k_schedule(std::string_view text);
MethodPolicy parse_policy(std::string_view text);
std::string policy_name(MethodPolicy p);

// Applies `key = value` lines ('#' comments) onto `config`.
void apply_config_text(std::string_view text, ScanConfig& config);

struct ScanRow {
  std::int64_t k = 0;
  std::string method;       // exact | mc
  std::string discrepancy;  // exact | grid(res)
  double D = 0.0;
  std::size_t atoms = 0;
  double lower = 0.0;
  std::optional<double> upper;
  std::optional<std::int64_t> M;
  std::optional<double> etk;
};

struct ScanReport {
  std::string source;  // "builtin:..." or "file:..."
  std::vector<std::vector<double>> matrix;
  int n = 0;
  int d = 0;
  std::string policy;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  int resolution = 0;
  std::optional<CertifiedConstant> constant;
  std::vector<ScanRow> rows;
  std::optional<double> fitted_exponent;
  std::string started;
  std::string finished;
};

GeneratorMatrix resolve_matrix(const ScanConfig& config, std::string* source = nullptr);

// Runs the pipeline row by row. Every row must satisfy
// lower <= D <= min(1, upper); a violation raises ConsistencyError.
ScanReport run_scan(const ScanConfig& config, Execution exec = Execution::parallel);

nlohmann::ordered_json to_json(const ScanReport& report);
std::string to_csv(const ScanReport& report);
std::string to_svg(const ScanReport& report);

// Writes scan.json, scan.csv and (when requested) scan.svg under out_dir.
void write_scan_outputs(const ScanReport& report, const ScanConfig& config);

// ISO-8601 UTC; SOURCE_DATE_EPOCH wins over the clock when set.
std::string timestamp_now();

}  // namespace torwalk
