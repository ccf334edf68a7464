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

#include "dp/supremum_power.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "common/error.h"

namespace gnndp {

PowerBound ParsePowerBound(std::string_view name) {
  if (name == "one_sided") return PowerBound::kOneSided;
  if (name == "two_sided") return PowerBound::kTwoSided;
  Fail(ErrorCode::kInvalidArgument, "unknown power bound: " + std::string(name));
}

const char* PowerBoundName(PowerBound bound) {
  return bound == PowerBound::kOneSided ? "one_sided" : "two_sided";
}

double SupremumPower(double epsilon, double delta, double fpr, PowerBound bound) {
  Require(fpr >= 0.0 && fpr <= 1.0, "fpr must lie in [0, 1]");
  Require(epsilon >= 0.0, "epsilon must be nonnegative");
  Require(delta >= 0.0 && delta <= 1.0, "delta must lie in [0, 1]");
  if (bound == PowerBound::kOneSided) {
    return std::min(1.0, std::exp(epsilon) * fpr + delta);
  }
  const double miss = std::max({0.0, 1.0 - delta - std::exp(epsilon) * fpr,
                                std::exp(-epsilon) * (1.0 - delta - fpr)});
  return 1.0 - miss;
}

double BinomialHalfWidth95(double p, size_t n) {
  Require(n > 0, "binomial half-width needs n > 0");
  p = std::clamp(p, 0.0, 1.0);
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace gnndp
