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

#ifndef GNNDP_DP_SUPREMUM_POWER_H_
#define GNNDP_DP_SUPREMUM_POWER_H_

#include <cstddef>
#include <string_view>

namespace gnndp {

enum class PowerBound {
  // min(1, e^eps * fpr + delta)
  kOneSided,
  // 1 - max(0, 1 - delta - e^eps * fpr, e^-eps * (1 - delta - fpr))
  kTwoSided,
};

// "one_sided" or "two_sided".
PowerBound ParsePowerBound(std::string_view name);
const char* PowerBoundName(PowerBound bound);

// Largest true-positive rate any membership test can reach at false-positive
// rate fpr against an (eps, delta)-DP mechanism.
double SupremumPower(double epsilon, double delta, double fpr,
                     PowerBound bound = PowerBound::kOneSided);

// Normal-approximation 95% half-width of a binomial proportion p over n trials.
double BinomialHalfWidth95(double p, size_t n);

}  // namespace gnndp

#endif  // GNNDP_DP_SUPREMUM_POWER_H_
