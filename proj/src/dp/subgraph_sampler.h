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

#ifndef GNNDP_DP_SUBGRAPH_SAMPLER_H_
#define GNNDP_DP_SUBGRAPH_SAMPLER_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "graph/population_graph.h"

namespace gnndp {

// Bounded r-hop neighborhood of one training node. nodes[0] is the root.
// Edges are the sampled (parent, child) expansions in local indices; the loss
// of this subgraph is attributed to the root only.
struct SampledSubgraph {
  uint32_t root = 0;
  std::vector<uint32_t> nodes;
  std::vector<uint8_t> hop;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
};

struct SamplerOptions {
  size_t max_degree = 5;        // K
  size_t hops = 2;              // r
  size_t occurrence_bound = 0;  // T; 0 means K * r + 1
  uint64_t seed = 0;

  size_t ResolvedOccurrenceBound() const {
    return occurrence_bound > 0 ? occurrence_bound : max_degree * hops + 1;
  }
};

struct SamplingResult {
  std::vector<SampledSubgraph> subgraphs;
  // Number of subgraphs each graph node appears in.
  std::vector<uint32_t> occurrences;
  size_t starved_roots = 0;
};

// Visits training nodes in a seeded random order and grows a BFS tree of depth
// r from each, keeping at most K children per expanded node, chosen uniformly
// among eligible neighbors. A node is eligible while its global occurrence
// count is below T; every training node has one occurrence reserved for its
// own subgraph. Hence no node ends up in more than T subgraphs.
SamplingResult SampleTrainingSubgraphs(const PopulationGraph& graph,
                                       const SamplerOptions& options);

}  // namespace gnndp

#endif  // GNNDP_DP_SUBGRAPH_SAMPLER_H_
