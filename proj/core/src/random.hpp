// Copyright 2026 The Authors.
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


// Portable variate generation on top of std::mt19937_64. The standard
// library distributions are implementation-defined, so draws are built from
// raw engine output to keep seeded runs identical across toolchains.

#ifndef FEEDERLAB_SRC_RANDOM_HPP_
#define FEEDERLAB_SRC_RANDOM_HPP_

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>

#include "feederlab/distribution.hpp"

namespace feederlab::detail {

using Engine = std::mt19937_64;

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

// Box-Muller, using one variate of the pair.
inline double standard_normal(Engine& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline double draw(const Distribution& dist, Engine& rng) {
  switch (dist.kind()) {
    case Distribution::Kind::kPareto:
      return std::pow(1.0 - uniform01(rng), -1.0 / dist.alpha());
    case Distribution::Kind::kNormal:
      return dist.mean() + dist.stddev() * standard_normal(rng);
    case Distribution::Kind::kTruncatedNormal:
      return dist.inv_ccdf(1.0 - uniform01(rng));
    case Distribution::Kind::kEmpirical: {
      const auto& s = dist.sample();
      auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(s.size()));
      return s[std::min(i, s.size() - 1)];
    }
  }
  return 0.0;
}

}  // namespace feederlab::detail

#endif  // FEEDERLAB_SRC_RANDOM_HPP_
