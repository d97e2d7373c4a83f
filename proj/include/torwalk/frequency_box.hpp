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
#include <span>
#include <string>
#include <vector>

#include "torwalk/errors.hpp"
#include "torwalk/summation.hpp"

namespace torwalk {

using Frequency = std::vector<std::int64_t>;

inline constexpr std::size_t kFrequencyBoxCap = 50'000'000;

// The integer box [-radius, radius]^d in lexicographic order (first
// coordinate most significant), addressed by a flat index.
class FrequencyBox {
 public:
  FrequencyBox(int d, std::int64_t radius, std::size_t cap = kFrequencyBoxCap)
      : d_(d), radius_(radius), width_(2 * radius + 1) {
    if (d < 1) throw ValidationError("frequency box needs d >= 1");
    if (radius < 0) throw ValidationError("frequency box radius must be >= 0");
    size_ = 1;
    for (int i = 0; i < d; ++i) {
      if (static_cast<std::size_t>(size_) > cap / static_cast<std::size_t>(width_)) {
        throw InfeasibleError("frequency box [-" + std::to_string(radius) + ", " +
                              std::to_string(radius) + "]^" + std::to_string(d) +
                              " exceeds the cap of " + std::to_string(cap) + " vectors");
      }
      size_ *= width_;
    }
  }

  int d() const noexcept { return d_; }
  std::int64_t radius() const noexcept { return radius_; }
  std::int64_t size() const noexcept { return size_; }

  void at(std::int64_t flat, std::span<std::int64_t> h) const noexcept {
    for (int i = d_ - 1; i >= 0; --i) {
      h[i] = flat % width_ - radius_;
      flat /= width_;
    }
  }

 private:
  int d_;
  std::int64_t radius_;
  std::int64_t width_;
  std::int64_t size_ = 1;
};

inline std::int64_t sup_norm(std::span<const std::int64_t> h) noexcept {
  std::int64_t m = 0;
  for (auto v : h) m = std::max(m, v < 0 ? -v : v);
  return m;
}

inline bool is_zero(std::span<const std::int64_t> h) noexcept { return sup_norm(h) == 0; }

// Representative of the pair {h, -h}: first nonzero coordinate positive.
inline bool is_canonical(std::span<const std::int64_t> h) noexcept {
  for (auto v : h) {
    if (v != 0) return v > 0;
  }
  return false;
}

// Fixed-size chunks give a reduction order that does not depend on the
// number of threads.
inline constexpr std::int64_t kChunk = 4096;

inline std::int64_t chunk_count(std::int64_t size) noexcept { return (size + kChunk - 1) / kChunk; }

// Ordered compensated sum of term(h) over every h in the box.
template <typename Term>
double ordered_box_sum(const FrequencyBox& box, Term term, Execution exec) {
  const std::int64_t chunks = chunk_count(box.size());
  std::vector<CompensatedSum> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel if (exec == Execution::parallel && chunks > 1)
  {
    std::vector<std::int64_t> h(box.d());
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      CompensatedSum s;
      const std::int64_t end = std::min(box.size(), (c + 1) * kChunk);
      for (std::int64_t flat = c * kChunk; flat < end; ++flat) {
        box.at(flat, h);
        s.add(term(std::span<const std::int64_t>(h)));
      }
      partial[static_cast<std::size_t>(c)] = s;
    }
  }
  CompensatedSum total;
  for (const auto& s : partial) total.add(s);
  return total.value();
}

}  // namespace torwalk
