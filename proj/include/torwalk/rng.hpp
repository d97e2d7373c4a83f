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

namespace torwalk {

// Counter-based generator: the n-th output of a stream is a pure function of
// (key, n), so any trial can be regenerated in isolation and results do not
// depend on how trials are scheduled across threads. The mixing function is
// the SplitMix64 finalizer; keys for sub-streams are derived by hashing.
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  // Independent stream `index` of the generator keyed by `seed`.
  static constexpr CounterRng stream(std::uint64_t seed,
                                     std::uint64_t index) noexcept {
    return CounterRng(mix(seed ^ mix(index * kGamma + 0x632be59bd9b4e019ULL)));
  }

  constexpr std::uint64_t at(std::uint64_t counter) const noexcept {
    return mix(key_ + (counter + 1) * kGamma);
  }

  constexpr std::uint64_t next() noexcept { return at(counter_++); }

  // Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by Lemire's multiply-and-reject.
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace torwalk
