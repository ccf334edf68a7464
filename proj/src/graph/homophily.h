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

#ifndef GNNDP_GRAPH_HOMOPHILY_H_
#define GNNDP_GRAPH_HOMOPHILY_H_

#include <map>
#include <optional>

#include "graph/population_graph.h"

namespace gnndp {

// Fraction of undirected edges whose endpoints share a label. Throws
// kUndefinedMetric on an edgeless graph.
double EdgeHomophily(const PopulationGraph& graph);

// Mean over non-isolated nodes of the fraction of same-label neighbors.
double NodeHomophily(const PopulationGraph& graph);

struct GraphStats {
  size_t num_nodes = 0;
  size_t num_edges = 0;
  double mean_degree = 0.0;
  size_t max_degree = 0;
  std::optional<double> edge_homophily;
  std::optional<double> node_homophily;
  std::vector<size_t> class_histogram;
  size_t num_train = 0;
  size_t num_val = 0;
  size_t num_test = 0;
  // Present once a training split exists.
  std::optional<double> recommended_delta;
};

GraphStats ComputeGraphStats(const PopulationGraph& graph);

}  // namespace gnndp

#endif  // GNNDP_GRAPH_HOMOPHILY_H_
