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

#ifndef GNNDP_GRAPH_POPULATION_GRAPH_H_
#define GNNDP_GRAPH_POPULATION_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gnndp {

enum class SplitTag : uint8_t { kUnassigned = 0, kTrain = 1, kVal = 2, kTest = 3 };

// Where a graph came from. Carried into every exported sidecar.
struct Provenance {
  std::string generator;  // "csv", "synthetic", "knn(...)", "import"
  uint64_t seed = 0;
  std::vector<std::string> warnings;
};

// Undirected attributed graph. Adjacency is CSR with each undirected edge
// stored in both directions and neighbor lists sorted ascending. No
// self-loops. A single split tag per node keeps the three masks disjoint.
class PopulationGraph {
 public:
  PopulationGraph() = default;

  // Edgeless graph. features is row-major num_nodes x feat_dim.
  PopulationGraph(size_t num_nodes, size_t feat_dim, std::vector<double> features,
                  std::vector<int> labels, int num_classes);

  size_t num_nodes() const { return num_nodes_; }
  size_t feat_dim() const { return feat_dim_; }
  int num_classes() const { return num_classes_; }

  std::span<const double> features() const { return features_; }
  std::span<const double> feature_row(size_t v) const {
    return {features_.data() + v * feat_dim_, feat_dim_};
  }
  std::span<const int> labels() const { return labels_; }
  int label(size_t v) const { return labels_[v]; }

  std::span<const size_t> offsets() const { return offsets_; }
  std::span<const uint32_t> neighbors(size_t v) const {
    return {indices_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  size_t degree(size_t v) const { return offsets_[v + 1] - offsets_[v]; }
  size_t num_undirected_edges() const { return indices_.size() / 2; }

  // Replaces the edge set. Pairs may be given in either orientation and may
  // repeat; self-loops are rejected.
  void SetEdges(std::span<const std::pair<uint32_t, uint32_t>> undirected);
  // Each undirected edge once, u < v, sorted.
  std::vector<std::pair<uint32_t, uint32_t>> EdgeList() const;
  bool HasEdge(size_t u, size_t v) const;

  std::span<const SplitTag> splits() const { return splits_; }
  SplitTag split(size_t v) const { return splits_[v]; }
  void SetSplits(std::vector<SplitTag> splits);
  std::vector<uint32_t> NodesWithSplit(SplitTag tag) const;
  std::vector<uint8_t> Mask(SplitTag tag) const;

  const Provenance& provenance() const { return provenance_; }
  Provenance& mutable_provenance() { return provenance_; }

  // Full scan of the structural invariants; throws on violation.
  void Validate() const;

 private:
  size_t num_nodes_ = 0;
  size_t feat_dim_ = 0;
  int num_classes_ = 0;
  std::vector<double> features_;
  std::vector<int> labels_;
  std::vector<size_t> offsets_{0};
  std::vector<uint32_t> indices_;
  std::vector<SplitTag> splits_;
  Provenance provenance_;
};

}  // namespace gnndp

#endif  // GNNDP_GRAPH_POPULATION_GRAPH_H_
