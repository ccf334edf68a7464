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

#ifndef GNNDP_GRAPH_SPLITS_H_
#define GNNDP_GRAPH_SPLITS_H_

#include <array>
#include <cstdint>

#include "graph/population_graph.h"

namespace gnndp {

struct SplitSpec {
  double train_fraction = 0.56;
  double val_fraction = 0.14;
  double test_fraction = 0.30;
  uint64_t seed = 0;

  void Validate() const;
};

// Largest-remainder apportionment of n items; ties go to the earlier slot.
std::array<size_t, 3> SplitCounts(size_t n, const SplitSpec& spec);

// Seeded uniform shuffle of node ids cut into train/val/test by SplitCounts.
PopulationGraph AssignSplits(const PopulationGraph& graph, const SplitSpec& spec);

}  // namespace gnndp

#endif  // GNNDP_GRAPH_SPLITS_H_
