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

#include "graph/synthetic.h"

#include <cmath>
#include <unordered_set>

#include "common/error.h"
#include "common/random.h"

namespace gnndp {

void SyntheticSpec::Validate() const {
  Require(num_classes == 2, "synthetic generator supports exactly 2 classes");
  Require(num_nodes >= 4 && num_nodes % 2 == 0,
          "synthetic num_nodes must be even and >= 4");
  Require(target_homophily >= 0.0 && target_homophily <= 1.0,
          "target_homophily must lie in [0, 1]");
  Require(neighbors_per_node >= 1, "neighbors_per_node must be >= 1");
  Require(neighbors_per_node < num_nodes / 2,
          "neighbors_per_node must be smaller than the class size");
  Require(feat_dim >= 1, "feat_dim must be >= 1");
  Require(class_separation >= 0.0, "class_separation must be >= 0");
  Require(feature_noise_std >= 0.0, "feature_noise_std must be >= 0");
}

PopulationGraph GenerateSynthetic(const SyntheticSpec& spec) {
  spec.Validate();
  const size_t n = spec.num_nodes;
  const size_t half = n / 2;
  const size_t d = spec.feat_dim;

  // Node v has class v / half; members of class c are [c*half, (c+1)*half).
  std::vector<int> labels(n);
  for (size_t v = 0; v < n; ++v) labels[v] = v < half ? 0 : 1;

  Rng feature_rng = MakeRng(spec.seed, streams::kSyntheticFeatures);
  const double offset = 0.5 * spec.class_separation / std::sqrt(static_cast<double>(d));
  std::vector<double> features(n * d);
  for (size_t v = 0; v < n; ++v) {
    const double center = labels[v] == 0 ? -offset : offset;
    for (size_t j = 0; j < d; ++j) {
      features[v * d + j] = center + spec.feature_noise_std * StandardNormal(feature_rng);
    }
  }

  Rng edge_rng = MakeRng(spec.seed, streams::kSyntheticEdges);
  std::unordered_set<uint64_t> seen;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  edges.reserve(n * spec.neighbors_per_node);
  size_t dropped = 0;
  for (size_t v = 0; v < n; ++v) {
    const size_t own = static_cast<size_t>(labels[v]);
    for (size_t slot = 0; slot < spec.neighbors_per_node; ++slot) {
      const bool same = UniformUnit(edge_rng) < spec.target_homophily;
      const size_t cls = same ? own : 1 - own;
      bool placed = false;
      for (int attempt = 0; attempt <= kMaxSlotRetries; ++attempt) {
        const size_t u = cls * half + UniformIndex(edge_rng, half);
        if (u == v) continue;
        const uint64_t key = std::min(u, v) * n + std::max(u, v);
        if (!seen.insert(key).second) continue;
        edges.emplace_back(static_cast<uint32_t>(v), static_cast<uint32_t>(u));
        placed = true;
        break;
      }
      dropped += !placed;
    }
  }

  PopulationGraph graph(n, d, std::move(features), std::move(labels), 2);
  graph.SetEdges(edges);
  Provenance& prov = graph.mutable_provenance();
  prov.generator = "synthetic";
  prov.seed = spec.seed;
  const size_t slots = n * spec.neighbors_per_node;
  if (dropped * 100 > slots) {
    prov.warnings.push_back("retry cap exhausted on " + std::to_string(dropped) +
                            " of " + std::to_string(slots) + " neighbor slots");
  }
  return graph;
}

}  // namespace gnndp
