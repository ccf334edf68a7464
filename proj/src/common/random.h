// Copyright 2026 The gnndp Authors
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

#ifndef GNNDP_COMMON_RANDOM_H_
#define GNNDP_COMMON_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gnndp {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent stream seeds from a
// master seed so that sub-tasks never share a generator.
inline uint64_t MixSeed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Rng MakeRng(uint64_t seed, uint64_t stream) {
  return Rng(MixSeed(seed, stream));
}

// Stream ids. Keeping them in one place avoids accidental reuse.
namespace streams {
inline constexpr uint64_t kSyntheticFeatures = 1;
inline constexpr uint64_t kSyntheticEdges = 2;
inline constexpr uint64_t kSplit = 3;
inline constexpr uint64_t kInit = 4;
inline constexpr uint64_t kSampler = 5;
inline constexpr uint64_t kBatch = 6;
inline constexpr uint64_t kNoise = 7;
inline constexpr uint64_t kShadowSplit = 8;
inline constexpr uint64_t kShadowTrain = 9;
}  // namespace streams

// Uniform index in [0, n). Avoids std::uniform_int_distribution so results
// do not depend on the standard library vendor.
inline size_t UniformIndex(Rng& rng, size_t n) {
  const uint64_t limit = Rng::max() - (Rng::max() % n);
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<size_t>(x % n);
}

inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; the spare deviate is discarded to keep the draw count per call
// fixed.
inline double StandardNormal(Rng& rng) {
  double u1;
  do {
    u1 = UniformUnit(rng);
  } while (u1 <= 0.0);
  const double u2 = UniformUnit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

template <typename T>
void Shuffle(std::vector<T>& values, Rng& rng) {
  for (size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[UniformIndex(rng, i)]);
  }
}

}  // namespace gnndp

#endif  // GNNDP_COMMON_RANDOM_H_
