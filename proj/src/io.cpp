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

#include "torwalk/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "torwalk/errors.hpp"

namespace torwalk::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view tok, std::size_t line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw ValidationError("line " + std::to_string(line) + ": cannot parse '" + std::string(tok) +
                          "' as a real number");
  }
  return v;
}

// Rows of reals from comma/whitespace separated text.
std::vector<std::vector<double>> parse_table(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ',' || std::isspace(static_cast<unsigned char>(line[i])))) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ',' && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      row.push_back(parse_real(line.substr(i, j - i), line_no));
      i = j;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::vector<double>> parse_matrix_text(std::string_view text) {
  return parse_table(text);
}

std::string format_matrix(const GeneratorMatrix& g) {
  std::string out;
  for (int j = 0; j < g.n(); ++j) {
    for (int i = 0; i < g.d(); ++i) {
      if (i) out += ',';
      out += format_double(g(j, i));
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << contents;
}

GeneratorMatrix read_matrix_file(const std::string& path) {
  return load_generators(parse_matrix_text(read_file(path)));
}

std::string format_point_csv(const WeightedPointSet& p) {
  std::string out;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (double x : p.point(a)) {
      out += format_double(x);
      out += ',';
    }
    out += format_double(p.weight(a));
    out += '\n';
  }
  return out;
}

WeightedPointSet parse_point_csv(std::string_view text) {
  const auto rows = parse_table(text);
  if (rows.empty()) throw ValidationError("point file has no atoms");
  const std::size_t width = rows.front().size();
  if (width < 2) throw ValidationError("point rows need d >= 1 coordinates and a weight");
  std::vector<double> coords;
  std::vector<double> weights;
  for (const auto& r : rows) {
    if (r.size() != width) throw ValidationError("ragged point file");
    coords.insert(coords.end(), r.begin(), r.end() - 1);
    weights.push_back(r.back());
  }
  return WeightedPointSet::from_atoms(static_cast<int>(width - 1), std::move(coords),
                                      std::move(weights), Provenance::empirical);
}

WeightedPointSet read_point_file(const std::string& path) {
  return parse_point_csv(read_file(path));
}

BuiltinRequest parse_builtin(std::string_view text) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto colon = text.find(':');
    parts.push_back(trim(text.substr(0, colon)));
    if (colon == std::string_view::npos) break;
    text = text.substr(colon + 1);
  }
  BuiltinRequest req;
  std::string family(parts.front());
  std::optional<std::string> param;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto tok = parts[i];
    const auto x = tok.find('x');
    if (tok.starts_with("seed=")) {
      std::uint64_t s = 0;
      auto v = tok.substr(5);
      auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
      if (ec != std::errc() || p != v.data() + v.size()) {
        throw ValidationError("bad seed in builtin '" + std::string(tok) + "'");
      }
      req.seed = s;
    } else if (x != std::string_view::npos && x > 0 && std::isdigit(static_cast<unsigned char>(tok[0]))) {
      auto a = tok.substr(0, x);
      auto b = tok.substr(x + 1);
      auto [p1, e1] = std::from_chars(a.data(), a.data() + a.size(), req.n);
      auto [p2, e2] = std::from_chars(b.data(), b.data() + b.size(), req.d);
      if (e1 != std::errc() || e2 != std::errc() || p1 != a.data() + a.size() ||
          p2 != b.data() + b.size() || req.n < 1 || req.d < 1) {
        throw ValidationError("bad shape '" + std::string(tok) + "', expected NxD");
      }
    } else {
      param = std::string(tok);
    }
  }
  if (param) {
    if (family.find('(') != std::string::npos) {
      throw ValidationError("family parameter given twice in '" + family + "'");
    }
    family += "(" + *param + ")";
  }
  req.spec = parse_family(family);
  return req;
}

GeneratorMatrix resolve_builtin(const BuiltinRequest& req, std::optional<std::uint64_t> fallback_seed) {
  return builtin_generators(req.spec, req.n, req.d, req.seed ? req.seed : fallback_seed);
}

nlohmann::ordered_json to_json(const DiscrepancyResult& r) {
  nlohmann::ordered_json j;
  j["value"] = r.value;
  j["witness"] = {{"a", r.witness.a}, {"b", r.witness.b}};
  j["direction"] = r.direction == Direction::excess ? "excess" : "deficit";
  if (r.exact) {
    j["exactness"] = "exact";
  } else {
    j["exactness"] = "grid(" + std::to_string(r.resolution) + ")";
  }
  return j;
}

nlohmann::ordered_json to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["k"] = r.k;
  j["lower"] = r.lower;
  j["upper"] = r.upper ? nlohmann::ordered_json(*r.upper) : nlohmann::ordered_json(nullptr);
  if (r.constant) {
    j["C_A"] = r.constant->c_a;
    j["C_A_hmax"] = r.constant->hmax;
    j["C_A_c_est"] = r.constant->c_est;
    j["C_A_certified"] = r.constant->certified;
  } else {
    j["C_A"] = nullptr;
    j["C_A_hmax"] = nullptr;
    j["C_A_c_est"] = nullptr;
    j["C_A_certified"] = nullptr;
  }
  j["M"] = r.M ? nlohmann::ordered_json(*r.M) : nlohmann::ordered_json(nullptr);
  j["s_value"] = r.s_value ? nlohmann::ordered_json(*r.s_value) : nlohmann::ordered_json(nullptr);
  j["lemma_ok"] = r.lemma_ok ? nlohmann::ordered_json(*r.lemma_ok) : nlohmann::ordered_json(nullptr);
  return j;
}

nlohmann::ordered_json to_json(const BadApproxEstimate& e) {
  nlohmann::ordered_json j;
  j["c_est"] = e.c_est;
  j["argmin_h"] = e.argmin_h;
  j["hmax"] = e.hmax;
  j["certified_up_to"] = e.certified_up_to;
  return j;
}

nlohmann::ordered_json to_json(const WeightedPointSet& p) {
  nlohmann::ordered_json j;
  j["d"] = p.d();
  j["provenance"] = p.provenance() == Provenance::exact ? "exact" : "empirical";
  auto atoms = nlohmann::ordered_json::array();
  for (std::size_t a = 0; a < p.size(); ++a) {
    atoms.push_back({{"point", std::vector<double>(p.point(a).begin(), p.point(a).end())},
                     {"weight", p.weight(a)}});
  }
  j["atoms"] = std::move(atoms);
  return j;
}

}  // namespace torwalk::io
