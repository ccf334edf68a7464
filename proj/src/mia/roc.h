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

#ifndef GNNDP_MIA_ROC_H_
#define GNNDP_MIA_ROC_H_

#include <cstdint>
#include <span>
#include <vector>

namespace gnndp {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  // From (0,0) to (1,1), one point per distinct score threshold.
  std::vector<RocPoint> points;
  double auc = 0.0;
};

// Sweeps thresholds over the distinct scores in descending order (tied
// scores enter together). Higher score means "member". Throws when only one
// class is present.
RocCurve ComputeRoc(std::span<const double> scores, std::span<const uint8_t> is_member);

// Best TPR among ROC points with FPR <= fpr_budget.
double TprAtFpr(const RocCurve& roc, double fpr_budget);

}  // namespace gnndp

#endif  // GNNDP_MIA_ROC_H_
