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

#ifndef GNNDP_GRAPH_GRAPH_IO_H_
#define GNNDP_GRAPH_GRAPH_IO_H_

#include <string>

#include "graph/population_graph.h"

namespace gnndp {

// Edge list text: one "u v" line per undirected edge, u < v, ascending.
std::string FormatEdgeList(const PopulationGraph& graph);
std::vector<std::pair<uint32_t, uint32_t>> ParseEdgeList(const std::string& text,
                                                         size_t num_nodes);

// JSON sidecar: {schema_version, num_nodes, num_classes, num_edges,
// homophily, node_homophily, seed, provenance{generator, warnings}}.
// homophily is null for an edgeless graph.
std::string FormatSidecar(const PopulationGraph& graph);

void ExportGraph(const PopulationGraph& graph, const std::string& edges_path,
                 const std::string& sidecar_path);

// Attaches the edge list at edges_path to a graph that already holds features
// and labels (typically from LoadCsv).
PopulationGraph ImportEdges(const PopulationGraph& graph, const std::string& edges_path);

}  // namespace gnndp

#endif  // GNNDP_GRAPH_GRAPH_IO_H_
