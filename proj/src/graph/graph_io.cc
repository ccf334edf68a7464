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

#include "graph/graph_io.h"

#include <sstream>

#include "common/error.h"
#include "common/file_util.h"
#include "graph/homophily.h"
#include "json.hpp"

namespace gnndp {

std::string FormatEdgeList(const PopulationGraph& graph) {
  std::ostringstream out;
  for (auto [u, v] : graph.EdgeList()) out << u << ' ' << v << '\n';
  return out.str();
}

std::vector<std::pair<uint32_t, uint32_t>> ParseEdgeList(const std::string& text,
                                                         size_t num_nodes) {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long u = -1, v = -1;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest)) {
      Fail(ErrorCode::kParse, "edge list line " + std::to_string(line_no) +
                                  ": expected 'u v'");
    }
    if (u < 0 || v < 0 || static_cast<size_t>(u) >= num_nodes ||
        static_cast<size_t>(v) >= num_nodes) {
      Fail(ErrorCode::kParse, "edge list line " + std::to_string(line_no) +
                                  ": node id out of range");
    }
    if (u == v) {
      Fail(ErrorCode::kParse, "edge list line " + std::to_string(line_no) +
                                  ": self-loop");
    }
    edges.emplace_back(static_cast<uint32_t>(u), static_cast<uint32_t>(v));
  }
  return edges;
}

std::string FormatSidecar(const PopulationGraph& graph) {
  const GraphStats stats = ComputeGraphStats(graph);
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["num_nodes"] = graph.num_nodes();
  j["num_classes"] = graph.num_classes();
  j["num_edges"] = stats.num_edges;
  j["homophily"] = stats.edge_homophily ? nlohmann::ordered_json(*stats.edge_homophily)
                                        : nlohmann::ordered_json(nullptr);
  j["node_homophily"] = stats.node_homophily
                            ? nlohmann::ordered_json(*stats.node_homophily)
                            : nlohmann::ordered_json(nullptr);
  j["seed"] = graph.provenance().seed;
  j["provenance"] = {{"generator", graph.provenance().generator},
                     {"warnings", graph.provenance().warnings}};
  return j.dump(2) + "\n";
}

void ExportGraph(const PopulationGraph& graph, const std::string& edges_path,
                 const std::string& sidecar_path) {
  WriteFileAtomic(edges_path, FormatEdgeList(graph));
  WriteFileAtomic(sidecar_path, FormatSidecar(graph));
}

PopulationGraph ImportEdges(const PopulationGraph& graph, const std::string& edges_path) {
  PopulationGraph out = graph;
  out.SetEdges(ParseEdgeList(ReadFile(edges_path), graph.num_nodes()));
  out.mutable_provenance().generator = graph.provenance().generator + "+edges";
  return out;
}

}  // namespace gnndp
