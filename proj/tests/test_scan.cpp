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


#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "torwalk/errors.hpp"
#include "torwalk/io.hpp"
#include "torwalk/scan.hpp"

using torwalk::parse_k_schedule;
using torwalk::run_scan;
using torwalk::ScanConfig;

namespace {

ScanConfig builtin_config(const std::string& builtin, const std::string& ks) {
  ScanConfig c;
  c.builtin = builtin;
  c.k_schedule = parse_k_schedule(ks);
  return c;
}

std::string without_timestamps(const torwalk::ScanReport& r) {
  auto j = torwalk::to_json(r);
  j.erase("timestamps");
  return j.dump();
}

}  // namespace

TEST_CASE("step schedules") {
  CHECK(parse_k_schedule("1,2,3") == std::vector<std::int64_t>{1, 2, 3});
  CHECK(parse_k_schedule("5, 1 ,3,3") == std::vector<std::int64_t>{1, 3, 5});
  CHECK(parse_k_schedule("4..7") == std::vector<std::int64_t>{4, 5, 6, 7});
  CHECK(parse_k_schedule("2^3..2^6") == std::vector<std::int64_t>{8, 16, 32, 64});
  CHECK(parse_k_schedule("10^2") == std::vector<std::int64_t>{100});
  CHECK(parse_k_schedule("3^0..3^2,2") == std::vector<std::int64_t>{1, 2, 3, 9});
  CHECK_THROWS_AS(parse_k_schedule(""), torwalk::ValidationError);
  CHECK_THROWS_AS(parse_k_schedule(" , "), torwalk::ValidationError);
  CHECK_THROWS_AS(parse_k_schedule("0"), torwalk::ValidationError);
  CHECK_THROWS_AS(parse_k_schedule("7..4"), torwalk::ValidationError);
  CHECK_THROWS_AS(parse_k_schedule("x"), torwalk::ValidationError);
  CHECK_THROWS_AS(parse_k_schedule("2^99"), torwalk::ValidationError);
}

TEST_CASE("config files") {
  ScanConfig c;
  torwalk::apply_config_text(
      "# golden walk\nbuiltin = golden\nk = 1..4\nmethod = exact\ntrials = 50\nseed = 9\n"
      "resolution = 64\nca = 0.38\nhmax = 200\nout = results\nformat = csv\nsvg = yes\n",
      c);
  CHECK(c.builtin == "golden");
  CHECK(c.k_schedule == std::vector<std::int64_t>{1, 2, 3, 4});
  CHECK(c.policy == torwalk::MethodPolicy::exact);
  CHECK(c.trials == 50);
  CHECK(c.seed == 9u);
  CHECK(c.resolution == 64);
  CHECK(c.ca == 0.38);
  CHECK(c.hmax == 200);
  CHECK(c.out_dir == "results");
  CHECK(c.format == "csv");
  CHECK(c.svg);

  CHECK_THROWS_AS(torwalk::apply_config_text("colour = blue\n", c), torwalk::ValidationError);
  CHECK_THROWS_AS(torwalk::apply_config_text("k\n", c), torwalk::ValidationError);
  CHECK_THROWS_AS(torwalk::apply_config_text("method = fast\n", c), torwalk::ValidationError);
  CHECK_THROWS_AS(torwalk::apply_config_text("ca = nan\n", c), torwalk::ValidationError);
}

TEST_CASE("scan inputs are validated") {
  ScanConfig empty;
  empty.builtin = "golden";
  CHECK_THROWS_AS(run_scan(empty), torwalk::ValidationError);

  auto none = builtin_config("golden", "1");
  none.builtin.reset();
  CHECK_THROWS_AS(run_scan(none), torwalk::ValidationError);

  auto both = builtin_config("golden", "1");
  both.matrix_path = "m.txt";
  CHECK_THROWS_AS(run_scan(both), torwalk::ValidationError);
}

TEST_CASE("golden scan") {
  auto c = builtin_config("golden", "2^4..2^8");
  c.ca = 0.38;
  c.hmax = 100;
  auto r = run_scan(c);
  REQUIRE(r.rows.size() == 5);
  CHECK(r.source == "builtin:golden");
  CHECK(r.n == 1);
  for (const auto& row : r.rows) {
    CHECK(row.method == "exact");
    CHECK(row.discrepancy == "exact");
    CHECK(row.atoms == static_cast<std::size_t>(row.k + 1));
    CHECK(row.lower <= row.D);
    REQUIRE(row.upper.has_value());
    CHECK(row.D <= *row.upper);
  }
  // M is below one until k is large enough.
  CHECK_FALSE(r.rows.front().M.has_value());
  CHECK(r.rows.back().M.has_value());
  CHECK(*r.rows.back().etk >= r.rows.back().D);
  REQUIRE(r.fitted_exponent.has_value());
  CHECK(*r.fitted_exponent < 0.0);
}

TEST_CASE("rational walk does not equidistribute") {
  // 1/3 is not a double, so the images are distinct atoms clustered within
  // k ulps of the three lattice points rather than exactly three atoms.
  auto r = run_scan(builtin_config("rational(3)", "1..40"));
  for (const auto& row : r.rows) {
    CHECK(row.atoms <= static_cast<std::size_t>(row.k + 1));
    if (row.k >= 10) CHECK(row.D >= 0.3);
  }
}

TEST_CASE("method policies") {
  auto mc = builtin_config("sqrt_primes:1x2", "3,6");
  mc.policy = torwalk::MethodPolicy::mc;
  mc.trials = 2000;
  auto r = run_scan(mc);
  for (const auto& row : r.rows) CHECK(row.method == "mc");

  auto grid = builtin_config("sqrt_primes:1x2", "3");
  grid.policy = torwalk::MethodPolicy::grid;
  grid.resolution = 64;
  auto rg = run_scan(grid);
  CHECK(rg.rows[0].method == "exact");
  CHECK(rg.rows[0].discrepancy == "grid(64)");

  // The d = 2 exact discrepancy cap is exceeded by k = 30 (961 atoms).
  auto auto_grid = builtin_config("sqrt_primes:2x2", "30");
  auto_grid.resolution = 32;
  auto ra = run_scan(auto_grid);
  CHECK(ra.rows[0].discrepancy == "grid(32)");

  auto exact = builtin_config("sqrt_primes:2x2", "30");
  exact.policy = torwalk::MethodPolicy::exact;
  CHECK_THROWS_AS(run_scan(exact), torwalk::InfeasibleError);

  // Past the lattice cap the walk falls back to sampling.
  auto big = builtin_config("sqrt_primes:3x1", "120");
  big.trials = 5000;
  CHECK(run_scan(big).rows[0].method == "mc");
  big.policy = torwalk::MethodPolicy::exact;
  CHECK_THROWS_AS(run_scan(big), torwalk::InfeasibleError);
}

TEST_CASE("an overstated constant is caught") {
  auto c = builtin_config("golden", "100");
  c.ca = 1000.0;
  c.hmax = 10;
  CHECK_THROWS_AS(run_scan(c), torwalk::ConsistencyError);
}

TEST_CASE("scans are reproducible") {
  auto c = builtin_config("random:2x1:seed=5", "4,9,40");
  c.trials = 3000;
  const auto a = without_timestamps(run_scan(c, torwalk::Execution::parallel));
  const auto b = without_timestamps(run_scan(c, torwalk::Execution::serial));
  CHECK(a == b);
  CHECK(torwalk::to_csv(run_scan(c)) == torwalk::to_csv(run_scan(c)));
}

TEST_CASE("report formats") {
  auto c = builtin_config("golden", "1,2,4");
  c.ca = 0.38;
  c.hmax = 50;
  auto r = run_scan(c);
  const auto csv = torwalk::to_csv(r);
  CHECK(csv.rfind("k,method,discrepancy,D,atoms,lower,upper,M,etk\n", 0) == 0);
  CHECK(csv.find("\n1,exact,exact,") != std::string::npos);
  auto j = torwalk::to_json(r);
  CHECK(j["rows"].size() == 3);
  CHECK(j["constant"]["certified"] == true);
  CHECK(j["rows"][0]["M"].is_null());
  const auto svg = torwalk::to_svg(r);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "torwalk_scan_test";
  std::filesystem::remove_all(dir);
  c.out_dir = dir.string();
  c.svg = true;
  torwalk::write_scan_outputs(r, c);
  CHECK(std::filesystem::exists(dir / "scan.json"));
  CHECK(std::filesystem::exists(dir / "scan.csv"));
  CHECK(std::filesystem::exists(dir / "scan.svg"));
  CHECK(torwalk::io::read_file((dir / "scan.csv").string()) == csv);
  std::filesystem::remove_all(dir);
}

TEST_CASE("timestamps honour SOURCE_DATE_EPOCH") {
  ::setenv("SOURCE_DATE_EPOCH", "86400", 1);
  CHECK(torwalk::timestamp_now() == "1970-01-02T00:00:00Z");
  ::unsetenv("SOURCE_DATE_EPOCH");
}
