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

#include "graph/homophily.h"

#include <algorithm>

#include "common/error.h"
#include "dp/delta_policy.h"

namespace gnndp {

double EdgeHomophily(const PopulationGraph& graph) {
  size_t same = 0;
  size_t total = 0;
  for (uint32_t u = 0; u < graph.num_nodes(); ++u) {
    for (uint32_t v : graph.neighbors(u)) {
      if (u < v) {
        ++total;
        same += graph.label(u) == graph.label(v);
      }
    }
  }
  if (total == 0) {
    Fail(ErrorCode::kUndefinedMetric, "homophily is undefined on an edgeless graph");
  }
  return static_cast<double>(same) / static_cast<double>(total);
}

double NodeHomophily(const PopulationGraph& graph) {
  double sum = 0.0;
  size_t counted = 0;
  for (uint32_t u = 0; u < graph.num_nodes(); ++u) {
    auto nbrs = graph.neighbors(u);
    if (nbrs.empty()) continue;
    size_t same = 0;
    for (uint32_t v : nbrs) same += graph.label(u) == graph.label(v);
    sum += static_cast<double>(same) / static_cast<double>(nbrs.size());
    ++counted;
  }
  if (counted == 0) {
    Fail(ErrorCode::kUndefinedMetric, "homophily is undefined on an edgeless graph");
  }
  return sum / static_cast<double>(counted);
}

GraphStats ComputeGraphStats(const PopulationGraph& graph) {
  GraphStats stats;
  stats.num_nodes = graph.num_nodes();
  stats.num_edges = graph.num_undirected_edges();
  for (size_t v = 0; v < graph.num_nodes(); ++v) {
    stats.max_degree = std::max(stats.max_degree, graph.degree(v));
  }
  if (stats.num_nodes > 0) {
    stats.mean_degree = 2.0 * static_cast<double>(stats.num_edges) /
                        static_cast<double>(stats.num_nodes);
  }
  if (stats.num_edges > 0) {
    stats.edge_homophily = EdgeHomophily(graph);
    stats.node_homophily = NodeHomophily(graph);
  }
  stats.class_histogram.assign(static_cast<size_t>(graph.num_classes()), 0);
  for (int y : graph.labels()) ++stats.class_histogram[static_cast<size_t>(y)];
  for (SplitTag tag : graph.splits()) {
    stats.num_train += tag == SplitTag::kTrain;
    stats.num_val += tag == SplitTag::kVal;
    stats.num_test += tag == SplitTag::kTest;
  }
  if (stats.num_train > 0) stats.recommended_delta = RecommendDelta(stats.num_train);
  return stats;
}

}  // namespace gnndp
