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

#ifndef GNNDP_DP_DELTA_POLICY_H_
#define GNNDP_DP_DELTA_POLICY_H_

#include <cstddef>

#include "common/error.h"

namespace gnndp {

// delta = 1 / (10 * n_train).
inline double RecommendDelta(size_t n_train) {
  Require(n_train >= 1, "n_train must be >= 1");
  return 1.0 / (10.0 * static_cast<double>(n_train));
}

}  // namespace gnndp

#endif  // GNNDP_DP_DELTA_POLICY_H_
