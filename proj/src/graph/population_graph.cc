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

#include "graph/population_graph.h"

#include <algorithm>

#include "common/error.h"

namespace gnndp {

PopulationGraph::PopulationGraph(size_t num_nodes, size_t feat_dim,
                                 std::vector<double> features,
                                 std::vector<int> labels, int num_classes)
    : num_nodes_(num_nodes),
      feat_dim_(feat_dim),
      num_classes_(num_classes),
      features_(std::move(features)),
      labels_(std::move(labels)),
      offsets_(num_nodes + 1, 0),
      splits_(num_nodes, SplitTag::kUnassigned) {
  if (feat_dim_ < 1) Fail(ErrorCode::kShape, "feat_dim must be >= 1");
  if (features_.size() != num_nodes_ * feat_dim_) {
    Fail(ErrorCode::kShape, "feature matrix size does not match num_nodes x feat_dim");
  }
  if (labels_.size() != num_nodes_) {
    Fail(ErrorCode::kShape, "label count does not match num_nodes");
  }
  for (int y : labels_) {
    if (y < 0 || y >= num_classes_) {
      Fail(ErrorCode::kInvalidArgument,
           "label " + std::to_string(y) + " outside [0, num_classes)");
    }
  }
}

void PopulationGraph::SetEdges(
    std::span<const std::pair<uint32_t, uint32_t>> undirected) {
  std::vector<std::pair<uint32_t, uint32_t>> directed;
  directed.reserve(undirected.size() * 2);
  for (auto [u, v] : undirected) {
    if (u >= num_nodes_ || v >= num_nodes_) {
      Fail(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
    if (u == v) Fail(ErrorCode::kInvalidArgument, "self-loops are not stored");
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());
  offsets_.assign(num_nodes_ + 1, 0);
  indices_.clear();
  indices_.reserve(directed.size());
  for (auto [u, v] : directed) {
    ++offsets_[u + 1];
    indices_.push_back(v);
  }
  for (size_t i = 0; i < num_nodes_; ++i) offsets_[i + 1] += offsets_[i];
}

std::vector<std::pair<uint32_t, uint32_t>> PopulationGraph::EdgeList() const {
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  edges.reserve(num_undirected_edges());
  for (uint32_t u = 0; u < num_nodes_; ++u) {
    for (uint32_t v : neighbors(u)) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

bool PopulationGraph::HasEdge(size_t u, size_t v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), static_cast<uint32_t>(v));
}

void PopulationGraph::SetSplits(std::vector<SplitTag> splits) {
  if (splits.size() != num_nodes_) {
    Fail(ErrorCode::kShape, "split vector length does not match num_nodes");
  }
  splits_ = std::move(splits);
}

std::vector<uint32_t> PopulationGraph::NodesWithSplit(SplitTag tag) const {
  std::vector<uint32_t> nodes;
  for (uint32_t v = 0; v < num_nodes_; ++v) {
    if (splits_[v] == tag) nodes.push_back(v);
  }
  return nodes;
}

std::vector<uint8_t> PopulationGraph::Mask(SplitTag tag) const {
  std::vector<uint8_t> mask(num_nodes_);
  for (size_t v = 0; v < num_nodes_; ++v) mask[v] = splits_[v] == tag;
  return mask;
}

void PopulationGraph::Validate() const {
  for (size_t u = 0; u < num_nodes_; ++u) {
    auto nbrs = neighbors(u);
    for (size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] == u) Fail(ErrorCode::kInternal, "self-loop stored");
      if (i > 0 && nbrs[i] <= nbrs[i - 1]) {
        Fail(ErrorCode::kInternal, "neighbor list unsorted or duplicated");
      }
      if (!HasEdge(nbrs[i], u)) Fail(ErrorCode::kInternal, "adjacency not symmetric");
    }
  }
}

}  // namespace gnndp
