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

#ifndef GNNDP_DP_CLIPPING_H_
#define GNNDP_DP_CLIPPING_H_

#include <span>
#include <vector>

#include "common/random.h"

namespace gnndp {

double L2Norm(std::span<const double> v);

// g * min(1, C / ||g||). The zero vector is returned unchanged.
std::vector<double> Clip(std::span<const double> g, double clip_norm);
void ClipInPlace(std::vector<double>& g, double clip_norm);

// Sum of per-example gradients, each clipped to clip_norm.
std::vector<double> ClippedSum(std::span<const std::vector<double>> grads,
                               double clip_norm);

// (sum_i clip(g_i, C) + N(0, sigma^2 C^2 I)) / m with m = grads.size().
std::vector<double> NoisyBatchGradient(std::span<const std::vector<double>> grads,
                                       double clip_norm, double sigma, Rng& rng);

}  // namespace gnndp

#endif  // GNNDP_DP_CLIPPING_H_
