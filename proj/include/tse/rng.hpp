// Copyright 2026 The tsekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TSE_RNG_HPP
#define TSE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "tse/common.hpp"

namespace tse {

// All randomness flows from one root seed through named substreams.
// Streams are independent of evaluation order: stream (seed, tag, index)
// always yields the same sequence, so examples/epochs can be processed in
// any order (or in parallel) without changing the draws.
//
// The engine is std::mt19937_64 (its output sequence is pinned by the
// standard); the uniform/normal mappings are written out explicitly because
// std::*_distribution algorithms are implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t root_seed, std::string_view tag,
            std::uint64_t index = 0) {
    std::uint64_t th = fnv1a(tag.data(), tag.size());
    std::seed_seq seq{
        static_cast<std::uint32_t>(root_seed), static_cast<std::uint32_t>(root_seed >> 32),
        static_cast<std::uint32_t>(th),        static_cast<std::uint32_t>(th >> 32),
        static_cast<std::uint32_t>(index),     static_cast<std::uint32_t>(index >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive on both ends.
  int uniform_int(int lo, int hi) {
    const int n = hi - lo + 1;
    int k = static_cast<int>(uniform() * n);
    if (k >= n) k = n - 1;
    return lo + k;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * M_PI * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tse

#endif  // TSE_RNG_HPP
