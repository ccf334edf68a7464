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

#ifndef GNNDP_MIA_SHADOW_H_
#define GNNDP_MIA_SHADOW_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "dp/privacy_spec.h"
#include "gnn/trainer.h"
#include "graph/population_graph.h"

namespace gnndp {

inline constexpr size_t kMinShadowCoverage = 8;

// Shadow models trained on random halves of the audit pool (target train and
// test nodes). membership[s][i] and phi[s][i] refer to pool[i].
struct ShadowEnsemble {
  std::vector<uint32_t> pool;
  std::vector<std::vector<uint8_t>> membership;
  std::vector<std::vector<double>> phi;

  size_t num_shadows() const { return membership.size(); }
  // IN / OUT scaled confidences of pool entry i, optionally leaving out the
  // shadows at index >= limit.
  void Samples(size_t i, size_t limit, std::vector<double>& in,
               std::vector<double>& out) const;
};

// For every pool entry, a uniformly random half of the shadows (rounded
// down) hold it IN. Each entry is therefore IN with probability 1/2 per shadow
// and every entry is covered floor(n/2) times IN and ceil(n/2) times OUT.
std::vector<std::vector<uint8_t>> BalancedMembership(size_t num_shadows, size_t pool_size,
                                                     uint64_t seed);

// Trains num_shadows models with the target's configuration. Pool nodes IN a
// shadow become its training set, the target's validation nodes stay the
// validation set and everything else is unlabeled; every feature and edge
// stays visible. Throws kAuditSetup when coverage would fall below 8 IN and
// 8 OUT per node. Shadows train in parallel on num_threads workers; the
// ensemble is identical for any thread count.
ShadowEnsemble TrainShadows(const PopulationGraph& graph, const TrainConfig& config,
                            const PrivacySpec* dp, size_t num_shadows, uint64_t seed,
                            size_t num_threads);

}  // namespace gnndp

#endif  // GNNDP_MIA_SHADOW_H_
