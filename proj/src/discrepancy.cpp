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

#include "torwalk/discrepancy.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "torwalk/errors.hpp"

namespace torwalk {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Running maximiser with the deterministic tie-break: larger value, then
// excess over deficit, then lexicographically smaller (a, b).
struct Best {
  double value = kNegInf;
  Direction direction = Direction::excess;
  std::vector<double> a;
  std::vector<double> b;

  bool set() const noexcept { return value != kNegInf; }

  bool beaten_by(double v, Direction dir, std::span<const double> ca,
                 std::span<const double> cb) const {
    if (!set()) return true;
    if (v != value) return v > value;
    if (dir != direction) return dir == Direction::excess;
    if (!std::ranges::equal(ca, a)) return std::ranges::lexicographical_compare(ca, a);
    return std::ranges::lexicographical_compare(cb, b);
  }

  void offer(double v, Direction dir, std::span<const double> ca, std::span<const double> cb) {
    if (v < value) return;
    if (!beaten_by(v, dir, ca, cb)) return;
    value = v;
    direction = dir;
    a.assign(ca.begin(), ca.end());
    b.assign(cb.begin(), cb.end());
  }

  void merge(const Best& other) {
    if (other.set()) offer(other.value, other.direction, other.a, other.b);
  }
};

void validate_box(const Box& box, int d) {
  if (box.a.size() != static_cast<std::size_t>(d) || box.b.size() != static_cast<std::size_t>(d)) {
    throw ValidationError("box dimension does not match the point set");
  }
  for (int i = 0; i < d; ++i) {
    if (!(0.0 <= box.a[i] && box.a[i] <= box.b[i] && box.b[i] <= 1.0)) {
      throw ValidationError("box must satisfy 0 <= a_i <= b_i <= 1");
    }
  }
}

DiscrepancyResult finish(const WeightedPointSet& p, const Best& best, bool exact, int resolution) {
  DiscrepancyResult r;
  r.witness = Box{best.a, best.b};
  r.direction = best.direction;
  r.exact = exact;
  r.resolution = resolution;
  const double vol = r.witness.volume();
  const double value = best.direction == Direction::excess
                           ? box_mass(p, r.witness, BoxMode::closure) - vol
                           : vol - box_mass(p, r.witness, BoxMode::interior);
  r.value = std::clamp(value, 0.0, 1.0);
  return r;
}

struct Interval {
  double lo;
  double hi;
};

std::vector<double> unique_axis_values(const WeightedPointSet& p, int axis) {
  std::vector<double> v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = p.point(i)[axis];
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Sweeps the last axis for one choice of intervals on the leading axes.
// `ys`/`ws` hold the admitted atoms sorted by last coordinate.
class LastAxisSweep {
 public:
  explicit LastAxisSweep(int d) : a_(d), b_(d) {}

  void set_prefix(std::span<const Interval> lead) {
    for (std::size_t i = 0; i < lead.size(); ++i) {
      a_[i] = lead[i].lo;
      b_[i] = lead[i].hi;
    }
  }

  void excess(const std::vector<double>& ys, const std::vector<double>& ws, double vol,
              Best& best) {
    const std::size_t last = a_.size() - 1;
    CompensatedSum mass;
    double best_left = kNegInf;
    double best_lo = 0.0;
    for (std::size_t i = 0; i < ys.size();) {
      const double y = ys[i];
      const double left = vol * y - mass.value();
      if (left > best_left) {
        best_left = left;
        best_lo = y;
      }
      for (; i < ys.size() && ys[i] == y; ++i) mass.add(ws[i]);
      const double cand = mass.value() - vol * y + best_left;
      if (cand < best.value) continue;
      a_[last] = best_lo;
      b_[last] = y;
      best.offer(cand, Direction::excess, a_, b_);
    }
  }

  void deficit(const std::vector<double>& ys, const std::vector<double>& ws, double vol,
               Best& best) {
    const std::size_t last = a_.size() - 1;
    CompensatedSum mass;  // mass of candidates strictly before the current one
    double best_left = kNegInf;
    double best_lo = 0.0;
    std::size_t i = 0;
    // Candidate 0 carries any atoms sitting on the face y = 0.
    double c = 0.0;
    double c_mass = 0.0;
    for (; i < ys.size() && ys[i] == 0.0; ++i) c_mass += ws[i];
    for (;;) {
      if (c > 0.0) {
        const double cand = vol * c - mass.value() + best_left;
        if (cand >= best.value) {
          a_[last] = best_lo;
          b_[last] = c;
          best.offer(cand, Direction::deficit, a_, b_);
        }
      }
      if (c == 1.0) break;
      mass.add(c_mass);
      const double left = mass.value() - vol * c;
      if (left > best_left) {
        best_left = left;
        best_lo = c;
      }
      if (i < ys.size()) {
        c = ys[i];
        c_mass = 0.0;
        for (; i < ys.size() && ys[i] == c; ++i) c_mass += ws[i];
      } else {
        c = 1.0;
        c_mass = 0.0;
      }
    }
  }

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

void check_exact_cap(const WeightedPointSet& p) {
  const std::size_t cap = exact_discrepancy_cap(p.d());
  if (p.size() > cap) {
    throw InfeasibleError("exact discrepancy for d=" + std::to_string(p.d()) + " supports at most " +
                          std::to_string(cap) + " atoms, got " + std::to_string(p.size()) +
                          "; use discrepancy_grid instead");
  }
}

// Enumerates leading-axis intervals in lexicographic order of the flattened
// index and runs the last-axis sweep for each. Parallel over that index.
void enumerate_exact(const WeightedPointSet& p, Direction dir, Execution exec, Best& global) {
  const int d = p.d();
  const int lead = d - 1;
  std::vector<std::vector<Interval>> lists(lead);
  for (int axis = 0; axis < lead; ++axis) {
    std::vector<double> vals = unique_axis_values(p, axis);
    if (dir == Direction::deficit) {
      if (vals.empty() || vals.front() != 0.0) vals.insert(vals.begin(), 0.0);
      vals.push_back(1.0);
    }
    auto& list = lists[axis];
    for (std::size_t s = 0; s < vals.size(); ++s) {
      for (std::size_t t = (dir == Direction::excess ? s : s + 1); t < vals.size(); ++t) {
        list.push_back({vals[s], vals[t]});
      }
    }
  }
  std::int64_t combos = 1;
  for (const auto& l : lists) combos *= static_cast<std::int64_t>(l.size());

  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return p.point(x)[lead] < p.point(y)[lead];
  });

  const bool closure = dir == Direction::excess;
  const bool parallel = exec == Execution::parallel && combos > 1;
#pragma omp parallel if (parallel)
  {
    Best local;
    LastAxisSweep sweep(d);
    std::vector<Interval> chosen(lead);
    std::vector<double> ys, ws;
    ys.reserve(p.size());
    ws.reserve(p.size());
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t flat = 0; flat < combos; ++flat) {
      std::int64_t rest = flat;
      double vol = 1.0;
      for (int axis = lead - 1; axis >= 0; --axis) {
        const auto sz = static_cast<std::int64_t>(lists[axis].size());
        chosen[axis] = lists[axis][rest % sz];
        rest /= sz;
      }
      for (int axis = 0; axis < lead; ++axis) vol *= chosen[axis].hi - chosen[axis].lo;
      ys.clear();
      ws.clear();
      for (std::size_t idx : order) {
        auto x = p.point(idx);
        bool inside = true;
        for (int axis = 0; axis < lead && inside; ++axis) {
          inside = closure ? (chosen[axis].lo <= x[axis] && x[axis] <= chosen[axis].hi)
                           : (chosen[axis].lo < x[axis] && x[axis] < chosen[axis].hi);
        }
        if (inside) {
          ys.push_back(x[lead]);
          ws.push_back(p.weight(idx));
        }
      }
      if (closure && ys.empty()) continue;
      sweep.set_prefix(chosen);
      if (closure) {
        sweep.excess(ys, ws, vol, local);
      } else {
        sweep.deficit(ys, ws, vol, local);
      }
    }
#pragma omp critical(torwalk_discrepancy_merge)
    global.merge(local);
  }
}

// Index of the grid slot holding coordinate x: 2g for x == g/res exactly,
// 2g+1 for g/res < x < (g+1)/res.
std::size_t grid_slot(double x, int res) {
  auto g = static_cast<std::int64_t>(std::floor(x * res));
  g = std::clamp<std::int64_t>(g, 0, res);
  while (g > 0 && static_cast<double>(g) / res > x) --g;
  while (g < res && static_cast<double>(g + 1) / res <= x) ++g;
  const bool on_grid = static_cast<double>(g) / res == x;
  return static_cast<std::size_t>(on_grid ? 2 * g : 2 * g + 1);
}

}  // namespace

double Box::volume() const noexcept {
  double v = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) v *= b[i] - a[i];
  return v;
}

std::size_t exact_discrepancy_cap(int d) noexcept {
  switch (d) {
    case 1: return kExactCapD1;
    case 2: return kExactCapD2;
    case 3: return kExactCapD3;
    default: return 0;
  }
}

double box_mass(const WeightedPointSet& p, const Box& box, BoxMode mode) {
  const int d = p.d();
  validate_box(box, d);
  CompensatedSum mass;
  for (std::size_t k = 0; k < p.size(); ++k) {
    auto x = p.point(k);
    bool inside = true;
    for (int i = 0; i < d && inside; ++i) {
      inside = mode == BoxMode::closure ? (box.a[i] <= x[i] && x[i] <= box.b[i])
                                        : (box.a[i] < x[i] && x[i] < box.b[i]);
    }
    if (inside) mass.add(p.weight(k));
  }
  return mass.value();
}

DiscrepancyResult discrepancy_exact(const WeightedPointSet& p, Execution exec) {
  if (p.size() == 0) throw ValidationError("discrepancy of an empty point set");
  check_exact_cap(p);
  Best best;
  enumerate_exact(p, Direction::excess, exec, best);
  enumerate_exact(p, Direction::deficit, exec, best);
  return finish(p, best, true, 0);
}

DiscrepancyResult discrepancy_grid(const WeightedPointSet& p, int resolution, Execution exec) {
  if (resolution < 2) throw ValidationError("grid resolution must be >= 2");
  if (p.size() == 0) throw ValidationError("discrepancy of an empty point set");
  const int d = p.d();
  const auto res = static_cast<std::size_t>(resolution);
  const std::size_t slots = 2 * res + 1;
  const std::size_t ext = slots + 1;  // prefix index t covers slots < t
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (total > kGridSlotCap / ext) {
      throw InfeasibleError("grid of resolution " + std::to_string(resolution) + " in d=" +
                            std::to_string(d) + " exceeds the slot cap");
    }
    total *= ext;
  }
  std::vector<std::size_t> stride(d, 1);
  for (int i = d - 2; i >= 0; --i) stride[i] = stride[i + 1] * ext;

  // Slot masses, stored at prefix index slot+1, then summed along each axis.
  std::vector<double> prefix(total, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    std::size_t idx = 0;
    for (int i = 0; i < d; ++i) idx += (grid_slot(p.point(k)[i], resolution) + 1) * stride[i];
    prefix[idx] += p.weight(k);
  }
  for (int axis = 0; axis < d; ++axis) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      if ((idx / stride[axis]) % ext == 0) continue;
      prefix[idx] += prefix[idx - stride[axis]];
    }
  }

  const int lead = d - 1;
  std::int64_t pairs_per_axis = static_cast<std::int64_t>(res * (res + 1) / 2);
  std::int64_t combos = 1;
  for (int i = 0; i < lead; ++i) combos *= pairs_per_axis;
  std::vector<std::pair<int, int>> pair_list;
  for (int a = 0; a < resolution; ++a)
    for (int b = a + 1; b <= resolution; ++b) pair_list.emplace_back(a, b);

  Best global;
  const bool parallel = exec == Execution::parallel && combos > 1;
#pragma omp parallel if (parallel)
  {
    Best local;
    std::vector<std::pair<int, int>> chosen(lead);
    std::vector<std::size_t> lo(lead), hi(lead);
    std::vector<double> col(slots + 1);
    std::vector<double> wa(d), wb(d);
    const std::size_t corners = std::size_t{1} << lead;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t flat = 0; flat < combos; ++flat) {
      std::int64_t rest = flat;
      for (int axis = lead - 1; axis >= 0; --axis) {
        chosen[axis] = pair_list[rest % pairs_per_axis];
        rest /= pairs_per_axis;
      }
      double vol = 1.0;
      for (int axis = 0; axis < lead; ++axis) {
        vol *= static_cast<double>(chosen[axis].second - chosen[axis].first) / resolution;
        wa[axis] = static_cast<double>(chosen[axis].first) / resolution;
        wb[axis] = static_cast<double>(chosen[axis].second) / resolution;
      }
      for (int mode = 0; mode < 2; ++mode) {
        const bool closure = mode == 0;
        for (int axis = 0; axis < lead; ++axis) {
          const auto ga = static_cast<std::size_t>(chosen[axis].first);
          const auto gb = static_cast<std::size_t>(chosen[axis].second);
          // Prefix indices bounding the slot range.
          lo[axis] = closure ? 2 * ga : 2 * ga + 1;
          hi[axis] = closure ? 2 * gb + 1 : 2 * gb;
        }
        // col[t] = mass of leading box x last-axis slots < t.
        for (std::size_t t = 0; t <= slots; ++t) {
          double s = 0.0;
          for (std::size_t mask = 0; mask < corners; ++mask) {
            std::size_t idx = t;
            int sign = 1;
            for (int axis = 0; axis < lead; ++axis) {
              if (mask >> axis & 1) {
                idx += lo[axis] * stride[axis];
                sign = -sign;
              } else {
                idx += hi[axis] * stride[axis];
              }
            }
            s += sign * prefix[idx];
          }
          col[t] = s;
        }
        double best_left = kNegInf;
        int best_a = 0;
        for (int b = 1; b <= resolution; ++b) {
          const int a = b - 1;
          const auto ua = static_cast<std::size_t>(a);
          const auto ub = static_cast<std::size_t>(b);
          const double left = closure ? vol * a / resolution - col[2 * ua]
                                      : col[2 * ua + 1] - vol * a / resolution;
          if (left > best_left) {
            best_left = left;
            best_a = a;
          }
          const double cand = closure ? col[2 * ub + 1] - vol * b / resolution + best_left
                                      : vol * b / resolution - col[2 * ub] + best_left;
          if (cand < local.value) continue;
          wa[lead] = static_cast<double>(best_a) / resolution;
          wb[lead] = static_cast<double>(b) / resolution;
          local.offer(cand, closure ? Direction::excess : Direction::deficit, wa, wb);
        }
      }
    }
#pragma omp critical(torwalk_grid_merge)
    global.merge(local);
  }
  return finish(p, global, false, resolution);
}

}  // namespace torwalk
