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

#include "graph/splits.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common/error.h"
#include "common/random.h"

namespace gnndp {

void SplitSpec::Validate() const {
  Require(train_fraction >= 0 && val_fraction >= 0 && test_fraction >= 0,
          "split fractions must be nonnegative");
  Require(std::abs(train_fraction + val_fraction + test_fraction - 1.0) <= 1e-9,
          "split fractions must sum to 1");
}

std::array<size_t, 3> SplitCounts(size_t n, const SplitSpec& spec) {
  spec.Validate();
  const std::array<double, 3> quotas = {spec.train_fraction * n,
                                        spec.val_fraction * n,
                                        spec.test_fraction * n};
  std::array<size_t, 3> counts{};
  size_t assigned = 0;
  for (size_t i = 0; i < 3; ++i) {
    counts[i] = static_cast<size_t>(std::floor(quotas[i] + 1e-9));
    assigned += counts[i];
  }
  std::array<size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return quotas[a] - counts[a] > quotas[b] - counts[b];
  });
  for (size_t i = 0; assigned < n; i = (i + 1) % 3) {
    ++counts[order[i]];
    ++assigned;
  }
  return counts;
}

PopulationGraph AssignSplits(const PopulationGraph& graph, const SplitSpec& spec) {
  const auto counts = SplitCounts(graph.num_nodes(), spec);
  std::vector<uint32_t> order(graph.num_nodes());
  std::iota(order.begin(), order.end(), 0u);
  Rng rng = MakeRng(spec.seed, streams::kSplit);
  Shuffle(order, rng);
  std::vector<SplitTag> tags(graph.num_nodes(), SplitTag::kUnassigned);
  size_t pos = 0;
  const SplitTag kinds[3] = {SplitTag::kTrain, SplitTag::kVal, SplitTag::kTest};
  for (size_t k = 0; k < 3; ++k) {
    for (size_t i = 0; i < counts[k]; ++i) tags[order[pos++]] = kinds[k];
  }
  PopulationGraph out = graph;
  out.SetSplits(std::move(tags));
  return out;
}

}  // namespace gnndp
