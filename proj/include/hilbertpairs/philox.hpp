// Copyright 2026 The hilbertpairs Authors
//
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

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace hp {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32 {
  using ctr_type = std::array<std::uint32_t, 4>;
  using key_type = std::array<std::uint32_t, 2>;

  static ctr_type block(ctr_type c, key_type k) {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        k[0] += 0x9E3779B9u;
        k[1] += 0xBB67AE85u;
      }
      std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * c[0];
      std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * c[2];
      auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
      auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
      c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
  }
};

// Stream keyed by a master seed; the trajectory index occupies the high
// counter words so streams of different trajectories never overlap.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  // Two independent standard normals from one counter block (Box-Muller).
  std::pair<double, double> normal_pair() {
    Philox4x32::ctr_type c{static_cast<std::uint32_t>(counter_),
                           static_cast<std::uint32_t>(counter_ >> 32),
                           static_cast<std::uint32_t>(stream_),
                           static_cast<std::uint32_t>(stream_ >> 32)};
    ++counter_;
    auto r = Philox4x32::block(c, key_);
    double u1 = to_unit((static_cast<std::uint64_t>(r[1]) << 32) | r[0]);
    double u2 = to_unit((static_cast<std::uint64_t>(r[3]) << 32) | r[2]);
    double rad = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * 3.14159265358979323846 * u2;
    return {rad * std::cos(ang), rad * std::sin(ang)};
  }

  std::uint64_t counter() const { return counter_; }

 private:
  static double to_unit(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
  }

  Philox4x32::key_type key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace hp
