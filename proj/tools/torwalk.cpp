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

// torwalk: exact k-step distributions of random walks on the d-torus, their
// box discrepancy, and the Fourier / Diophantine bounds around them.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "torwalk/diophantine.hpp"
#include "torwalk/discrepancy.hpp"
#include "torwalk/errors.hpp"
#include "torwalk/fourier.hpp"
#include "torwalk/io.hpp"
#include "torwalk/scan.hpp"
#include "torwalk/theorem_bounds.hpp"
#include "torwalk/walk.hpp"

namespace {

using namespace torwalk;

struct MatrixArgs {
  std::optional<std::string> matrix;
  std::optional<std::string> builtin;
  std::optional<std::uint64_t> seed;
};

void add_matrix_options(CLI::App* cmd, MatrixArgs& args) {
  auto* m = cmd->add_option("--matrix", args.matrix, "generator matrix file");
  auto* b = cmd->add_option("--builtin", args.builtin,
                            "builtin family[:params], e.g. golden, sqrt_primes:1x2, rational:3, "
                            "random:2x2:seed=5");
  m->excludes(b);
}

GeneratorMatrix load_matrix(const MatrixArgs& args) {
  if (args.matrix) return io::read_matrix_file(*args.matrix);
  if (args.builtin) return io::resolve_builtin(io::parse_builtin(*args.builtin), args.seed);
  throw ValidationError("no generator source: use --matrix <file> or --builtin <family>");
}

void warn_about(const GeneratorMatrix& g) {
  if (g.warnings().zero_row) std::cerr << "warning: a generator row is the zero vector\n";
  if (g.warnings().duplicate_rows) std::cerr << "warning: two generator rows coincide\n";
}

void emit(const std::optional<std::string>& out_dir, const std::string& name,
          const std::string& contents) {
  if (!out_dir) {
    std::cout << contents;
    return;
  }
  std::filesystem::create_directories(*out_dir);
  io::write_file((std::filesystem::path(*out_dir) / name).string(), contents);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torwalk: random walks on the torus, discrepancy and its bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::optional<std::string> out_dir;
  std::string format;

  // dist
  MatrixArgs dist_m;
  int dist_k = 0;
  std::optional<std::int64_t> dist_trials;
  auto* dist = app.add_subcommand("dist", "exact (or Monte Carlo) k-step distribution on the torus");
  add_matrix_options(dist, dist_m);
  dist->add_option("--k", dist_k, "number of steps")->required()->check(CLI::NonNegativeNumber);
  dist->add_option("--trials", dist_trials, "Monte Carlo trials (switches to simulation)")
      ->check(CLI::PositiveNumber);
  dist->add_option("--seed", dist_m.seed, "seed for Monte Carlo and the random family");
  dist->add_option("--out", out_dir, "output directory");
  dist->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // disc
  std::string disc_file;
  std::optional<int> disc_res;
  auto* disc = app.add_subcommand("disc", "box discrepancy of a point-set CSV");
  disc->add_option("points", disc_file, "point CSV: d coordinates then weight per line")->required();
  disc->add_option("--resolution", disc_res, "use the grid estimator at this resolution")
      ->check(CLI::Range(2, 1 << 20));
  disc->add_option("--out", out_dir, "output directory");
  disc->add_option("--format", format, "json or csv")->check(CLI::IsMember({"csv", "json"}));

  // bounds
  MatrixArgs bounds_m;
  std::int64_t bounds_k = 0;
  std::optional<double> bounds_ca;
  std::int64_t bounds_hmax = 1000;
  std::optional<std::int64_t> bounds_mflag;
  std::int64_t bounds_fourier = 8;
  auto* bounds = app.add_subcommand("bounds", "evaluate the lower and upper rate bounds and the ETK bound");
  add_matrix_options(bounds, bounds_m);
  bounds->add_option("--seed", bounds_m.seed, "seed for the random family");
  bounds->add_option("--k", bounds_k, "number of steps")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--ca", bounds_ca, "approximation constant C_A")->check(CLI::PositiveNumber);
  bounds->add_option("--hmax", bounds_hmax, "search range certifying C_A")->check(CLI::PositiveNumber);
  bounds->add_option("--m", bounds_mflag, "ETK truncation (default: choose_M)")->check(CLI::PositiveNumber);
  bounds->add_option("--fourier-hmax", bounds_fourier, "range of the Fourier lower-bound search")
      ->check(CLI::PositiveNumber);
  bounds->add_option("--out", out_dir, "output directory");

  // dirichlet
  MatrixArgs dir_m;
  double dir_q = 1.0;
  auto* dirichlet = app.add_subcommand("dirichlet", "pigeonhole search for h with {Ah} < 1/q");
  add_matrix_options(dirichlet, dir_m);
  dirichlet->add_option("--seed", dir_m.seed, "seed for the random family");
  dirichlet->add_option("--q", dir_q, "q >= 1")->required();
  dirichlet->add_option("--out", out_dir, "output directory");

  // badapprox
  MatrixArgs bad_m;
  std::int64_t bad_hmax = 100;
  auto* badapprox = app.add_subcommand("badapprox", "estimate the approximation constant C_A");
  add_matrix_options(badapprox, bad_m);
  badapprox->add_option("--seed", bad_m.seed, "seed for the random family");
  badapprox->add_option("--hmax", bad_hmax, "search range")->check(CLI::PositiveNumber);
  badapprox->add_option("--out", out_dir, "output directory");

  // scan
  std::optional<std::string> scan_config_file;
  std::optional<std::string> scan_matrix, scan_builtin, scan_k, scan_method, scan_out, scan_format;
  std::optional<std::int64_t> scan_trials, scan_hmax;
  std::optional<std::uint64_t> scan_seed;
  std::optional<int> scan_res;
  std::optional<double> scan_ca;
  bool scan_svg = false;
  auto* scan = app.add_subcommand("scan", "full pipeline over a k schedule");
  scan->add_option("--config", scan_config_file, "key = value configuration file");
  scan->add_option("--matrix", scan_matrix, "generator matrix file");
  scan->add_option("--builtin", scan_builtin, "builtin family[:params]");
  scan->add_option("--k,--k-schedule", scan_k, "k schedule, e.g. 2^4..2^13 or 1..50 or 10,20");
  scan->add_option("--method", scan_method, "auto | exact | mc | grid");
  scan->add_option("--trials", scan_trials, "Monte Carlo trials");
  scan->add_option("--seed", scan_seed, "seed");
  scan->add_option("--resolution", scan_res, "grid resolution");
  scan->add_option("--ca", scan_ca, "approximation constant C_A");
  scan->add_option("--hmax", scan_hmax, "search range certifying C_A");
  scan->add_option("--out", scan_out, "output directory (scan.json, scan.csv, scan.svg)");
  scan->add_option("--format", scan_format, "stdout format without --out: json or csv")
      ->check(CLI::IsMember({"csv", "json"}));
  scan->add_flag("--svg", scan_svg, "also write scan.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*dist) {
      const GeneratorMatrix g = load_matrix(dist_m);
      warn_about(g);
      WeightedPointSet p;
      if (dist_trials) {
        p = simulate_walk(g, dist_k, *dist_trials, dist_m.seed.value_or(1));
      } else {
        p = project_to_torus(exact_walk_distribution(g, dist_k), g);
      }
      if (format == "json") {
        emit(out_dir, "dist.json", io::to_json(p).dump(2) + "\n");
      } else {
        emit(out_dir, "dist.csv", io::format_point_csv(p));
      }
    } else if (*disc) {
      const WeightedPointSet p = io::read_point_file(disc_file);
      const DiscrepancyResult r = disc_res ? discrepancy_grid(p, *disc_res) : discrepancy_exact(p);
      if (format == "csv") {
        emit(out_dir, "disc.csv", "value,direction,exactness\n" + io::format_double(r.value) + "," +
                                      (r.direction == Direction::excess ? "excess" : "deficit") + "," +
                                      (r.exact ? "exact" : "grid(" + std::to_string(r.resolution) + ")") +
                                      "\n");
      } else {
        emit(out_dir, "disc.json", io::to_json(r).dump(2) + "\n");
      }
    } else if (*bounds) {
      const GeneratorMatrix g = load_matrix(bounds_m);
      warn_about(g);
      std::optional<CertifiedConstant> constant;
      if (bounds_ca) constant = certify_constant(g, *bounds_ca, bounds_hmax);
      const BoundReport report = bound_report(g, bounds_k, constant);
      nlohmann::ordered_json j;
      j["bound_report"] = io::to_json(report);
      const std::optional<std::int64_t> m = bounds_mflag ? bounds_mflag : report.M;
      if (m) {
        j["etk"] = {{"M", *m}, {"value", etk_upper_bound(g, bounds_k, *m)}};
      } else {
        j["etk"] = nullptr;
      }
      const auto f = best_fourier_lower_bound(g, bounds_k, bounds_fourier);
      j["fourier_lower_bound"] = {{"value", f.value}, {"h", f.h}, {"hmax", bounds_fourier}};
      if (constant && !constant->certified) {
        std::cerr << "warning: C_A=" << constant->c_a << " is not below the range minimum c_est="
                  << constant->c_est << " (hmax=" << constant->hmax << ")\n";
      }
      emit(out_dir, "bounds.json", j.dump(2) + "\n");
    } else if (*dirichlet) {
      const GeneratorMatrix g = load_matrix(dir_m);
      const Frequency h = dirichlet_search(g, dir_q);
      const auto dist_h = ah_distance(g, h);
      nlohmann::ordered_json j;
      j["q"] = dir_q;
      j["bound"] = dirichlet_bound(dir_q, g.n(), g.d());
      j["h"] = h;
      j["sup_norm"] = sup_norm(h);
      j["ah_sup_distance"] = dist_h.sup;
      emit(out_dir, "dirichlet.json", j.dump(2) + "\n");
    } else if (*badapprox) {
      const GeneratorMatrix g = load_matrix(bad_m);
      emit(out_dir, "badapprox.json", io::to_json(estimate_bad_constant(g, bad_hmax)).dump(2) + "\n");
    } else if (*scan) {
      ScanConfig config;
      if (scan_config_file) apply_config_text(io::read_file(*scan_config_file), config);
      if (scan_matrix) {
        config.matrix_path = scan_matrix;
        config.builtin.reset();
      }
      if (scan_builtin) {
        config.builtin = scan_builtin;
        config.matrix_path.reset();
      }
      if (scan_k) config.k_schedule = parse_k_schedule(*scan_k);
      if (scan_method) config.policy = parse_policy(*scan_method);
      if (scan_trials) config.trials = *scan_trials;
      if (scan_seed) config.seed = *scan_seed;
      if (scan_res) config.resolution = *scan_res;
      if (scan_ca) config.ca = scan_ca;
      if (scan_hmax) config.hmax = *scan_hmax;
      if (scan_out) config.out_dir = scan_out;
      if (scan_format) config.format = *scan_format;
      if (scan_svg) config.svg = true;
      const ScanReport report = run_scan(config);
      if (config.out_dir) {
        write_scan_outputs(report, config);
      } else if (config.format == "csv") {
        std::cout << to_csv(report);
      } else {
        std::cout << to_json(report).dump(2) << "\n";
      }
    }
  } catch (const torwalk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
