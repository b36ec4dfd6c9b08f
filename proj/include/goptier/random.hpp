// Copyright 2026 The goptier Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GOPTIER_RANDOM_HPP_
#define GOPTIER_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace goptier {

// Seeded stream whose output is identical on every conforming standard
// library: the engine is std::mt19937_64 and the conversions to doubles and
// ranged integers below are defined here rather than by std distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double NextUnit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * NextUnit(); }

  // Uniform integer in [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    auto offset = static_cast<std::int64_t>(NextUnit() * span);
    if (offset > hi - lo) offset = hi - lo;
    return lo + offset;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace goptier

#endif  // GOPTIER_RANDOM_HPP_
