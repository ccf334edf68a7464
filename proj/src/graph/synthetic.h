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

#ifndef GNNDP_GRAPH_SYNTHETIC_H_
#define GNNDP_GRAPH_SYNTHETIC_H_

#include <cstdint>

#include "graph/population_graph.h"

namespace gnndp {

struct SyntheticSpec {
  size_t num_nodes = 1000;
  int num_classes = 2;
  double target_homophily = 0.9;
  size_t neighbors_per_node = 5;
  size_t feat_dim = 10;
  // Distance between the two class centers.
  double class_separation = 1.5;
  double feature_noise_std = 1.0;
  uint64_t seed = 0;

  void Validate() const;
};

// Two-class graph with controlled edge homophily. Each node fills
// neighbors_per_node slots: a uniformly random same-class partner with
// probability target_homophily, otherwise a uniformly random partner of the
// other class. Colliding draws (self or existing edge) are redrawn up to
// kMaxSlotRetries times and then the slot is dropped. Edges are symmetrized by
// union. Features are isotropic Gaussians around centers at
// +-class_separation/2 along the all-ones diagonal.
PopulationGraph GenerateSynthetic(const SyntheticSpec& spec);

inline constexpr int kMaxSlotRetries = 64;

}  // namespace gnndp

#endif  // GNNDP_GRAPH_SYNTHETIC_H_
