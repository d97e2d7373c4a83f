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

#include "torwalk/scan.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <sstream>

#include "torwalk/discrepancy.hpp"
#include "torwalk/errors.hpp"
#include "torwalk/fourier.hpp"
#include "torwalk/io.hpp"
#include "torwalk/walk.hpp"

namespace torwalk {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ValidationError("cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

double parse_real(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    throw ValidationError("cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

// "2^7" or "128".
std::int64_t parse_k_value(std::string_view s) {
  s = trim(s);
  const auto caret = s.find('^');
  if (caret == std::string_view::npos) return parse_int(s, "k");
  const std::int64_t base = parse_int(s.substr(0, caret), "k base");
  const std::int64_t exp = parse_int(s.substr(caret + 1), "k exponent");
  if (base < 1 || exp < 0 || exp > 62) throw ValidationError("k power out of range");
  std::int64_t v = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(v, base, &v)) throw ValidationError("k power overflows");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ValidationError("expected a boolean, got '" + std::string(s) + "'");
}

nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}
nlohmann::ordered_json opt(const std::optional<std::int64_t>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

bool lattice_fits(int n, std::int64_t k) {
  const auto width = static_cast<std::size_t>(2 * k + 1);
  std::size_t states = 1;
  for (int j = 0; j < n; ++j) {
    if (states > kDefaultStateCap / width) return false;
    states *= width;
  }
  return true;
}

std::string describe_violation(const ScanRow& row, const char* what, double bound) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "bound violation at k=" << row.k << " (" << row.method << ", " << row.discrepancy
      << "): D=" << row.D << " " << what << " " << bound;
  return msg.str();
}

}  // namespace

std::vector<std::int64_t> parse_k_schedule(std::string_view text) {
  std::vector<std::int64_t> ks;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) {
      const auto dots = item.find("..");
      if (dots == std::string_view::npos) {
        ks.push_back(parse_k_value(item));
      } else {
        const auto lo_text = trim(item.substr(0, dots));
        const auto hi_text = trim(item.substr(dots + 2));
        const std::int64_t lo = parse_k_value(lo_text);
        const std::int64_t hi = parse_k_value(hi_text);
        if (hi < lo) throw ValidationError("empty k range '" + std::string(item) + "'");
        if (lo_text.find('^') != std::string_view::npos) {
          // Geometric range base^a..base^b.
          const std::int64_t base = parse_int(lo_text.substr(0, lo_text.find('^')), "k base");
          if (base < 2) throw ValidationError("geometric k range needs base >= 2");
          for (std::int64_t v = lo; v <= hi; v *= base) ks.push_back(v);
        } else {
          if (hi - lo > 10'000'000) throw ValidationError("k range too long");
          for (std::int64_t v = lo; v <= hi; ++v) ks.push_back(v);
        }
      }
    }
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  if (ks.empty()) throw ValidationError("k schedule is empty");
  for (auto k : ks) {
    if (k < 1) throw ValidationError("k schedule entries must be >= 1");
    if (k > 1'000'000'000) throw ValidationError("k schedule entry too large");
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

MethodPolicy parse_policy(std::string_view text) {
  text = trim(text);
  if (text == "auto") return MethodPolicy::automatic;
  if (text == "exact") return MethodPolicy::exact;
  if (text == "mc") return MethodPolicy::mc;
  if (text == "grid") return MethodPolicy::grid;
  throw ValidationError("unknown method policy '" + std::string(text) + "'");
}

std::string policy_name(MethodPolicy p) {
  switch (p) {
    case MethodPolicy::automatic: return "auto";
    case MethodPolicy::exact: return "exact";
    case MethodPolicy::mc: return "mc";
    case MethodPolicy::grid: return "grid";
  }
  return "?";
}

void apply_config_text(std::string_view text, ScanConfig& c) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    auto line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "matrix") {
      c.matrix_path = std::string(value);
    } else if (key == "builtin") {
      c.builtin = std::string(value);
    } else if (key == "k" || key == "k_schedule") {
      c.k_schedule = parse_k_schedule(value);
    } else if (key == "method") {
      c.policy = parse_policy(value);
    } else if (key == "trials") {
      c.trials = parse_int(value, "trials");
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_int(value, "seed"));
    } else if (key == "resolution") {
      c.resolution = static_cast<int>(parse_int(value, "resolution"));
    } else if (key == "ca") {
      c.ca = parse_real(value, "ca");
    } else if (key == "hmax") {
      c.hmax = parse_int(value, "hmax");
    } else if (key == "out") {
      c.out_dir = std::string(value);
    } else if (key == "format") {
      c.format = std::string(value);
    } else if (key == "svg") {
      c.svg = parse_bool(value);
    } else {
      throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" +
                            std::string(key) + "'");
    }
  }
}

GeneratorMatrix resolve_matrix(const ScanConfig& config, std::string* source) {
  if (config.matrix_path && config.builtin) {
    throw ValidationError("give either a matrix file or a builtin family, not both");
  }
  if (config.matrix_path) {
    if (source) *source = "file:" + *config.matrix_path;
    return io::read_matrix_file(*config.matrix_path);
  }
  if (config.builtin) {
    if (source) *source = "builtin:" + *config.builtin;
    return io::resolve_builtin(io::parse_builtin(*config.builtin), config.seed);
  }
  throw ValidationError("no generator source: use a matrix file or a builtin family");
}

std::string timestamp_now() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ScanReport run_scan(const ScanConfig& config, Execution exec) {
  if (config.k_schedule.empty()) throw ValidationError("k schedule is empty");
  if (config.trials < 1) throw ValidationError("trials must be >= 1");
  if (config.resolution < 2) throw ValidationError("resolution must be >= 2");
  if (config.hmax < 1) throw ValidationError("hmax must be >= 1");
  std::vector<std::int64_t> ks = config.k_schedule;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.front() < 1) throw ValidationError("k schedule entries must be >= 1");

  ScanReport report;
  report.started = timestamp_now();
  const GeneratorMatrix g = resolve_matrix(config, &report.source);
  report.matrix = g.rows();
  report.n = g.n();
  report.d = g.d();
  report.policy = policy_name(config.policy);
  report.trials = config.trials;
  report.seed = config.seed;
  report.resolution = config.resolution;
  if (config.ca) report.constant = certify_constant(g, *config.ca, config.hmax, exec);

  std::int64_t exact_max = -1;
  if (config.policy != MethodPolicy::mc) {
    for (auto k : ks) {
      if (lattice_fits(g.n(), k)) exact_max = k;
    }
  }
  std::optional<WalkConvolution> conv;
  if (exact_max >= 0) conv.emplace(g.n(), static_cast<int>(exact_max), exec);

  for (auto k : ks) {
    ScanRow row;
    row.k = k;
    WeightedPointSet points;
    if (conv && k <= exact_max && lattice_fits(g.n(), k)) {
      conv->advance_to(static_cast<int>(k));
      points = project_to_torus(conv->distribution(), g);
      row.method = "exact";
    } else if (config.policy == MethodPolicy::exact) {
      throw InfeasibleError("exact walk infeasible at k=" + std::to_string(k) +
                            " (lattice state cap); use method=auto or mc");
    } else {
      points = simulate_walk(g, static_cast<int>(k), config.trials, config.seed, exec);
      row.method = "mc";
    }
    row.atoms = points.size();

    DiscrepancyResult disc;
    const bool exact_fits = points.size() <= exact_discrepancy_cap(g.d());
    if (config.policy != MethodPolicy::grid && exact_fits) {
      disc = discrepancy_exact(points, exec);
      row.discrepancy = "exact";
    } else if (config.policy == MethodPolicy::exact) {
      throw InfeasibleError("exact discrepancy infeasible at k=" + std::to_string(k) + ": " +
                            std::to_string(points.size()) + " atoms exceed the d=" +
                            std::to_string(g.d()) + " cap");
    } else {
      disc = discrepancy_grid(points, config.resolution, exec);
      row.discrepancy = "grid(" + std::to_string(config.resolution) + ")";
    }
    row.D = disc.value;
    row.lower = theorem1_lower_bound(g.n(), g.d(), k);
    if (report.constant) {
      row.upper = theorem2_upper_bound(g.n(), g.d(), report.constant->c_a, k);
      if (m_target(g.n(), g.d(), report.constant->c_a, k) >= 1.0) {
        row.M = choose_M(g.n(), g.d(), report.constant->c_a, k);
        row.etk = etk_upper_bound(g, k, *row.M, exec);
      }
    }

    if (!(row.lower <= row.D)) throw ConsistencyError(describe_violation(row, "<", row.lower));
    if (!(row.D <= 1.0)) throw ConsistencyError(describe_violation(row, ">", 1.0));
    if (row.upper && !(row.D <= *row.upper)) {
      std::string msg = describe_violation(row, ">", *row.upper);
      if (!report.constant->certified) msg += " (C_A is not certified over the searched range)";
      throw ConsistencyError(msg);
    }
    report.rows.push_back(std::move(row));
  }

  std::vector<std::pair<double, double>> series;
  for (const auto& r : report.rows) {
    if (r.D > 0.0) series.emplace_back(static_cast<double>(r.k), r.D);
  }
  if (series.size() >= 3) report.fitted_exponent = fit_decay_exponent(series);
  report.finished = timestamp_now();
  return report;
}

nlohmann::ordered_json to_json(const ScanReport& r) {
  nlohmann::ordered_json j;
  j["tool"] = "torwalk";
  j["version"] = kToolVersion;
  j["matrix"] = {{"source", r.source}, {"n", r.n}, {"d", r.d}, {"rows", r.matrix}};
  j["policy"] = r.policy;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["resolution"] = r.resolution;
  if (r.constant) {
    j["constant"] = {{"C_A", r.constant->c_a},
                     {"hmax", r.constant->hmax},
                     {"c_est", r.constant->c_est},
                     {"certified", r.constant->certified}};
  } else {
    j["constant"] = nullptr;
  }
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"k", row.k},
                    {"method", row.method},
                    {"discrepancy", row.discrepancy},
                    {"D", row.D},
                    {"atoms", row.atoms},
                    {"lower", row.lower},
                    {"upper", opt(row.upper)},
                    {"M", opt(row.M)},
                    {"etk", opt(row.etk)}});
  }
  j["rows"] = std::move(rows);
  j["fitted_exponent"] = opt(r.fitted_exponent);
  j["timestamps"] = {{"started", r.started}, {"finished", r.finished}};
  return j;
}

std::string to_csv(const ScanReport& r) {
  std::string out = "k,method,discrepancy,D,atoms,lower,upper,M,etk\n";
  for (const auto& row : r.rows) {
    out += std::to_string(row.k) + ',' + row.method + ',' + row.discrepancy + ',' +
           io::format_double(row.D) + ',' + std::to_string(row.atoms) + ',' +
           io::format_double(row.lower) + ',' + (row.upper ? io::format_double(*row.upper) : "") +
           ',' + (row.M ? std::to_string(*row.M) : "") + ',' +
           (row.etk ? io::format_double(*row.etk) : "") + '\n';
  }
  return out;
}

std::string to_svg(const ScanReport& r) {
  constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 20, kTop = 20, kBottom = 50;
  double kmin = 1e300, kmax = -1e300, vmin = 1e300, vmax = -1e300;
  auto take = [&](double v) {
    if (v > 0 && std::isfinite(v)) {
      vmin = std::min(vmin, std::log10(v));
      vmax = std::max(vmax, std::log10(v));
    }
  };
  for (const auto& row : r.rows) {
    kmin = std::min(kmin, std::log10(static_cast<double>(row.k)));
    kmax = std::max(kmax, std::log10(static_cast<double>(row.k)));
    take(row.D);
    take(row.lower);
    if (row.upper) take(std::min(*row.upper, 1.0));
  }
  if (r.rows.empty() || vmin > vmax) {
    kmin = 0, kmax = 1, vmin = -1, vmax = 0;
  }
  if (kmax - kmin < 1e-9) kmax = kmin + 1;
  if (vmax - vmin < 1e-9) vmax = vmin + 1;
  auto px = [&](double k) { return kLeft + (std::log10(k) - kmin) / (kmax - kmin) * (kW - kLeft - kRight); };
  auto py = [&](double v) { return kTop + (vmax - std::log10(v)) / (vmax - vmin) * (kH - kTop - kBottom); };
  char buf[256];
  std::string svg;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "font-family=\"sans-serif\" font-size=\"12\">\n",
                kW, kH);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n",
                kLeft, kTop, kW - kLeft - kRight, kH - kTop - kBottom);
  svg += buf;
  auto polyline = [&](const char* color, const char* dash, auto value_of) {
    std::string pts;
    for (const auto& row : r.rows) {
      const std::optional<double> v = value_of(row);
      if (!v || !(*v > 0)) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(static_cast<double>(row.k)), py(*v));
      pts += buf;
    }
    if (pts.empty()) return;
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\"" +
           (dash[0] ? std::string(" stroke-dasharray=\"") + dash + "\"" : std::string()) +
           " points=\"" + pts + "\"/>\n";
  };
  polyline("black", "", [](const ScanRow& row) { return std::optional<double>(row.D); });
  polyline("blue", "4 3", [](const ScanRow& row) { return std::optional<double>(row.lower); });
  polyline("red", "4 3", [](const ScanRow& row) {
    return row.upper ? std::optional<double>(std::min(*row.upper, 1.0)) : std::nullopt;
  });
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">log10 k  [%.2f, %.2f]</text>\n",
                kLeft + (kW - kLeft - kRight) / 2, kH - 15, kmin, kmax);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"15\" y=\"%.1f\" transform=\"rotate(-90 15 %.1f)\" text-anchor=\"middle\">"
                "log10 D  [%.2f, %.2f]</text>\n",
                kTop + (kH - kTop - kBottom) / 2, kTop + (kH - kTop - kBottom) / 2, vmin, vmax);
  svg += buf;
  svg += "<text x=\"80\" y=\"38\">D (black), lower (blue), upper (red)</text>\n";
  svg += "</svg>\n";
  return svg;
}

void write_scan_outputs(const ScanReport& report, const ScanConfig& config) {
  if (!config.out_dir) return;
  std::filesystem::create_directories(*config.out_dir);
  const std::filesystem::path dir(*config.out_dir);
  io::write_file((dir / "scan.json").string(), to_json(report).dump(2) + "\n");
  io::write_file((dir / "scan.csv").string(), to_csv(report));
  if (config.svg) io::write_file((dir / "scan.svg").string(), to_svg(report));
}

}  // namespace torwalk
