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

#include "dp/clipping.h"

#include <cmath>

#include "common/error.h"

namespace gnndp {

double L2Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void ClipInPlace(std::vector<double>& g, double clip_norm) {
  Require(clip_norm > 0.0, "clip norm must be positive");
  const double norm = L2Norm(g);
  if (norm <= clip_norm) return;
  const double scale = clip_norm / norm;
  for (double& x : g) x *= scale;
}

std::vector<double> Clip(std::span<const double> g, double clip_norm) {
  std::vector<double> out(g.begin(), g.end());
  ClipInPlace(out, clip_norm);
  return out;
}

std::vector<double> ClippedSum(std::span<const std::vector<double>> grads,
                               double clip_norm) {
  Require(!grads.empty(), "empty gradient batch");
  std::vector<double> sum(grads.front().size(), 0.0);
  for (const auto& g : grads) {
    if (g.size() != sum.size()) Fail(ErrorCode::kShape, "gradient length mismatch");
    const double norm = L2Norm(g);
    const double scale = norm > clip_norm ? clip_norm / norm : 1.0;
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += scale * g[i];
  }
  return sum;
}

std::vector<double> NoisyBatchGradient(std::span<const std::vector<double>> grads,
                                       double clip_norm, double sigma, Rng& rng) {
  if (!(sigma > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "noise multiplier must be positive when noise is on");
  }
  std::vector<double> out = ClippedSum(grads, clip_norm);
  const double std_dev = sigma * clip_norm;
  const double inv_m = 1.0 / static_cast<double>(grads.size());
  for (double& x : out) x = (x + std_dev * StandardNormal(rng)) * inv_m;
  return out;
}

}  // namespace gnndp
