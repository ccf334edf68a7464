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

#ifndef GNNDP_MIA_LIRA_H_
#define GNNDP_MIA_LIRA_H_

#include <optional>
#include <span>
#include <vector>

#include "gnn/matrix.h"

namespace gnndp {

inline constexpr double kConfidenceClamp = 1e-7;
inline constexpr double kVarianceFloor = 1e-3;

// ln(p / (1 - p)) with p clamped to [1e-7, 1 - 1e-7].
double ScaledConfidence(double p);

// Scaled confidence of the true class for every row of logits.
std::vector<double> ScaledConfidences(const Matrix& logits, std::span<const int> labels);

// log N(observed; mu_in, s_in^2) - log N(observed; mu_out, s_out^2) with the
// Gaussians fitted to the IN and OUT samples (population variance, floored).
// Empty when either side has fewer than two samples.
std::optional<double> LiraScore(double observed, std::span<const double> in_samples,
                                std::span<const double> out_samples);

}  // namespace gnndp

#endif  // GNNDP_MIA_LIRA_H_
