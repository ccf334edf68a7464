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

#ifndef GNNDP_GNN_GCN_H_
#define GNNDP_GNN_GCN_H_

#include <span>
#include <utility>
#include <vector>

#include "gnn/matrix.h"
#include "gnn/model_params.h"
#include "graph/population_graph.h"

namespace gnndp {

struct SampledSubgraph;

// Propagation operator and inputs for one forward pass. adjacency holds
// D^-1/2 (A + I) D^-1/2 where D is the degree matrix of A + I. labels are
// indexed by context row.
struct ForwardContext {
  SparseMatrix adjacency;
  Matrix features;
  std::vector<int> labels;
  // Graph node id of each context row.
  std::vector<uint32_t> node_ids;
};

// Symmetric normalization of an undirected edge list over n nodes.
SparseMatrix NormalizeAdjacency(size_t n,
                                std::span<const std::pair<uint32_t, uint32_t>> edges);

// Whole-graph context (transductive: every node and edge participates).
ForwardContext MakeGraphContext(const PopulationGraph& graph);

// Context over a sampled subgraph, normalized with the subgraph's own edges.
ForwardContext MakeSubgraphContext(const PopulationGraph& graph,
                                   const SampledSubgraph& subgraph);

// Rows of the whole-graph context within hops of root, keeping the
// whole-graph normalization values. An r-layer GCN evaluated on this context
// reproduces the whole-graph logits at the root (row 0) exactly.
ForwardContext MakeEgoContext(const PopulationGraph& graph, const ForwardContext& full,
                              uint32_t root, size_t hops);

// Logits (rows x num_classes). gcn_conv layers compute A H W + b, dense
// layers H W + b; ReLU between layers, none after the last.
Matrix Forward(const ForwardContext& ctx, const ModelParams& params);

// Same as Forward for models without graph layers; adjacency is not used.
Matrix MlpForward(const Matrix& features, const ModelParams& params);

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad;
  Matrix logits;
};

// Mean softmax cross-entropy over ctx rows listed in rows and its gradient
// with respect to every parameter.
LossAndGrad ComputeLossAndGrad(const ForwardContext& ctx, const ModelParams& params,
                               std::span<const uint32_t> rows);

Matrix Softmax(const Matrix& logits);

// Index of the largest entry; ties go to the lowest class id.
int ArgMax(std::span<const double> row);

// Fraction of rows whose argmax equals the label. Throws on an empty set.
double Accuracy(const Matrix& logits, std::span<const int> labels,
                std::span<const uint32_t> rows);

}  // namespace gnndp

#endif  // GNNDP_GNN_GCN_H_
