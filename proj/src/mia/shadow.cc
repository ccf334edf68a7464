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

#include "mia/shadow.h"

#include <numeric>

#include "common/error.h"
#include "common/parallel.h"
#include "common/random.h"
#include "mia/lira.h"

namespace gnndp {

void ShadowEnsemble::Samples(size_t i, size_t limit, std::vector<double>& in,
                             std::vector<double>& out) const {
  in.clear();
  out.clear();
  const size_t n = std::min(limit, membership.size());
  for (size_t s = 0; s < n; ++s) {
    (membership[s][i] ? in : out).push_back(phi[s][i]);
  }
}

std::vector<std::vector<uint8_t>> BalancedMembership(size_t num_shadows, size_t pool_size,
                                                     uint64_t seed) {
  std::vector<std::vector<uint8_t>> membership(num_shadows,
                                               std::vector<uint8_t>(pool_size, 0));
  Rng rng = MakeRng(seed, streams::kShadowSplit);
  std::vector<size_t> order(num_shadows);
  for (size_t i = 0; i < pool_size; ++i) {
    std::iota(order.begin(), order.end(), size_t{0});
    Shuffle(order, rng);
    for (size_t k = 0; k < num_shadows / 2; ++k) membership[order[k]][i] = 1;
  }
  return membership;
}

ShadowEnsemble TrainShadows(const PopulationGraph& graph, const TrainConfig& config,
                            const PrivacySpec* dp, size_t num_shadows, uint64_t seed,
                            size_t num_threads) {
  if (num_shadows / 2 < kMinShadowCoverage) {
    Fail(ErrorCode::kAuditSetup,
         "need at least " + std::to_string(2 * kMinShadowCoverage) +
             " shadow models for 8 IN / 8 OUT coverage per node, got " +
             std::to_string(num_shadows));
  }
  ShadowEnsemble ensemble;
  for (uint32_t v = 0; v < graph.num_nodes(); ++v) {
    if (graph.split(v) == SplitTag::kTrain || graph.split(v) == SplitTag::kTest) {
      ensemble.pool.push_back(v);
    }
  }
  if (ensemble.pool.empty()) Fail(ErrorCode::kAuditSetup, "audit pool is empty");
  ensemble.membership = BalancedMembership(num_shadows, ensemble.pool.size(), seed);
  ensemble.phi.assign(num_shadows, {});

  ParallelFor(num_shadows, num_threads, [&](size_t s) {
    std::vector<SplitTag> tags(graph.num_nodes(), SplitTag::kUnassigned);
    for (uint32_t v = 0; v < graph.num_nodes(); ++v) {
      if (graph.split(v) == SplitTag::kVal) tags[v] = SplitTag::kVal;
    }
    for (size_t i = 0; i < ensemble.pool.size(); ++i) {
      tags[ensemble.pool[i]] = ensemble.membership[s][i] ? SplitTag::kTrain : SplitTag::kTest;
    }
    PopulationGraph shadow_graph = graph;
    shadow_graph.SetSplits(std::move(tags));
    TrainConfig shadow_config = config;
    shadow_config.seed = MixSeed(MixSeed(seed, streams::kShadowTrain), s);
    const TrainResult trained = Train(shadow_graph, shadow_config, dp);
    const std::vector<double> phi =
        ScaledConfidences(PredictLogits(shadow_graph, trained.params), graph.labels());
    std::vector<double> pool_phi(ensemble.pool.size());
    for (size_t i = 0; i < ensemble.pool.size(); ++i) pool_phi[i] = phi[ensemble.pool[i]];
    ensemble.phi[s] = std::move(pool_phi);
  });
  return ensemble;
}

}  // namespace gnndp
