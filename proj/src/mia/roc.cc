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

#include "mia/roc.h"

#include <algorithm>
#include <numeric>

#include "common/error.h"

namespace gnndp {

RocCurve ComputeRoc(std::span<const double> scores, std::span<const uint8_t> is_member) {
  if (scores.size() != is_member.size()) Fail(ErrorCode::kShape, "score/label length mismatch");
  size_t positives = 0;
  for (uint8_t m : is_member) positives += m != 0;
  const size_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0) {
    Fail(ErrorCode::kInvalidArgument, "ROC needs both members and non-members");
  }
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });

  RocCurve roc;
  roc.points.push_back({0.0, 0.0});
  size_t tp = 0, fp = 0;
  for (size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      if (is_member[order[i]]) ++tp; else ++fp;
    }
    roc.points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                          static_cast<double>(tp) / static_cast<double>(positives)});
  }
  for (size_t i = 1; i < roc.points.size(); ++i) {
    const auto& a = roc.points[i - 1];
    const auto& b = roc.points[i];
    roc.auc += (b.fpr - a.fpr) * 0.5 * (a.tpr + b.tpr);
  }
  return roc;
}

double TprAtFpr(const RocCurve& roc, double fpr_budget) {
  double best = 0.0;
  for (const auto& p : roc.points) {
    if (p.fpr <= fpr_budget) best = std::max(best, p.tpr);
  }
  return best;
}

}  // namespace gnndp
