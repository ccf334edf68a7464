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

#include "dp/subgraph_sampler.h"

#include <unordered_map>

#include "common/error.h"
#include "common/random.h"

namespace gnndp {

SamplingResult SampleTrainingSubgraphs(const PopulationGraph& graph,
                                       const SamplerOptions& options) {
  Require(options.max_degree >= 1, "max degree K must be >= 1");
  Require(options.hops >= 1, "hops r must be >= 1");
  const size_t T = options.ResolvedOccurrenceBound();
  Require(T >= 1, "occurrence bound T must be >= 1");

  std::vector<uint32_t> roots = graph.NodesWithSplit(SplitTag::kTrain);
  Require(!roots.empty(), "no training nodes to sample subgraphs for");
  Rng rng = MakeRng(options.seed, streams::kSampler);
  Shuffle(roots, rng);

  SamplingResult result;
  result.occurrences.assign(graph.num_nodes(), 0);
  for (uint32_t r : roots) result.occurrences[r] = 1;
  result.subgraphs.reserve(roots.size());

  std::vector<uint32_t> candidates;
  std::unordered_map<uint32_t, uint32_t> local;
  for (uint32_t root : roots) {
    SampledSubgraph sub;
    sub.root = root;
    sub.nodes.push_back(root);
    sub.hop.push_back(0);
    local.clear();
    local.emplace(root, 0);

    size_t frontier_begin = 0;
    for (size_t h = 1; h <= options.hops; ++h) {
      const size_t frontier_end = sub.nodes.size();
      for (size_t i = frontier_begin; i < frontier_end; ++i) {
        const uint32_t parent = sub.nodes[i];
        auto nbrs = graph.neighbors(parent);
        candidates.assign(nbrs.begin(), nbrs.end());
        Shuffle(candidates, rng);
        size_t kept = 0;
        for (uint32_t u : candidates) {
          if (kept == options.max_degree) break;
          if (local.count(u) || result.occurrences[u] >= T) continue;
          const auto child = static_cast<uint32_t>(sub.nodes.size());
          local.emplace(u, child);
          sub.nodes.push_back(u);
          sub.hop.push_back(static_cast<uint8_t>(h));
          sub.edges.emplace_back(static_cast<uint32_t>(i), child);
          ++result.occurrences[u];
          ++kept;
        }
      }
      frontier_begin = frontier_end;
    }
    if (sub.nodes.size() == 1 && graph.degree(root) > 0) ++result.starved_roots;
    result.subgraphs.push_back(std::move(sub));
  }
  return result;
}

}  // namespace gnndp
