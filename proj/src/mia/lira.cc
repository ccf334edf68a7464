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

#include "mia/lira.h"

#include <algorithm>
#include <cmath>

#include "gnn/gcn.h"

namespace gnndp {
namespace {

struct Gaussian {
  double mean = 0.0;
  double var = 0.0;
};

Gaussian Fit(std::span<const double> xs) {
  Gaussian g;
  for (double x : xs) g.mean += x;
  g.mean /= static_cast<double>(xs.size());
  for (double x : xs) g.var += (x - g.mean) * (x - g.mean);
  g.var = std::max(g.var / static_cast<double>(xs.size()), kVarianceFloor);
  return g;
}

double LogDensity(double x, const Gaussian& g) {
  const double d = x - g.mean;
  return -0.5 * d * d / g.var - 0.5 * std::log(2.0 * M_PI * g.var);
}

}  // namespace

double ScaledConfidence(double p) {
  p = std::clamp(p, kConfidenceClamp, 1.0 - kConfidenceClamp);
  return std::log(p) - std::log1p(-p);
}

std::vector<double> ScaledConfidences(const Matrix& logits, std::span<const int> labels) {
  const Matrix probs = Softmax(logits);
  std::vector<double> phi(logits.rows);
  for (size_t r = 0; r < logits.rows; ++r) {
    phi[r] = ScaledConfidence(probs(r, static_cast<size_t>(labels[r])));
  }
  return phi;
}

std::optional<double> LiraScore(double observed, std::span<const double> in_samples,
                                std::span<const double> out_samples) {
  if (in_samples.size() < 2 || out_samples.size() < 2) return std::nullopt;
  return LogDensity(observed, Fit(in_samples)) - LogDensity(observed, Fit(out_samples));
}

}  // namespace gnndp
