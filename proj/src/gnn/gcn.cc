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

#include "gnn/gcn.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "common/error.h"
#include "dp/subgraph_sampler.h"
#include "gnn/tape.h"

namespace gnndp {

SparseMatrix NormalizeAdjacency(size_t n,
                                std::span<const std::pair<uint32_t, uint32_t>> edges) {
  std::vector<std::vector<uint32_t>> adj(n);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (uint32_t v = 0; v < n; ++v) {
    adj[v].push_back(v);
    std::sort(adj[v].begin(), adj[v].end());
    adj[v].erase(std::unique(adj[v].begin(), adj[v].end()), adj[v].end());
  }
  std::vector<double> inv_sqrt_deg(n);
  for (size_t v = 0; v < n; ++v) {
    inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(adj[v].size()));
  }
  SparseMatrix s;
  s.rows = s.cols = n;
  s.offsets.assign(1, 0);
  for (uint32_t v = 0; v < n; ++v) {
    for (uint32_t u : adj[v]) {
      s.indices.push_back(u);
      s.values.push_back(inv_sqrt_deg[v] * inv_sqrt_deg[u]);
    }
    s.offsets.push_back(s.indices.size());
  }
  return s;
}

ForwardContext MakeGraphContext(const PopulationGraph& graph) {
  ForwardContext ctx;
  const auto edges = graph.EdgeList();
  ctx.adjacency = NormalizeAdjacency(graph.num_nodes(), edges);
  ctx.features = Matrix(graph.num_nodes(), graph.feat_dim(),
                        std::vector<double>(graph.features().begin(),
                                            graph.features().end()));
  ctx.labels.assign(graph.labels().begin(), graph.labels().end());
  ctx.node_ids.resize(graph.num_nodes());
  for (uint32_t v = 0; v < graph.num_nodes(); ++v) ctx.node_ids[v] = v;
  return ctx;
}

ForwardContext MakeSubgraphContext(const PopulationGraph& graph,
                                   const SampledSubgraph& subgraph) {
  ForwardContext ctx;
  const size_t n = subgraph.nodes.size();
  ctx.adjacency = NormalizeAdjacency(n, subgraph.edges);
  ctx.features = Matrix(n, graph.feat_dim());
  ctx.labels.resize(n);
  ctx.node_ids = subgraph.nodes;
  for (size_t i = 0; i < n; ++i) {
    auto row = graph.feature_row(subgraph.nodes[i]);
    std::copy(row.begin(), row.end(), ctx.features.data.begin() + i * graph.feat_dim());
    ctx.labels[i] = graph.label(subgraph.nodes[i]);
  }
  return ctx;
}

ForwardContext MakeEgoContext(const PopulationGraph& graph, const ForwardContext& full,
                              uint32_t root, size_t hops) {
  std::vector<uint32_t> nodes = {root};
  std::unordered_map<uint32_t, uint32_t> local = {{root, 0}};
  size_t begin = 0;
  for (size_t h = 0; h < hops; ++h) {
    const size_t end = nodes.size();
    for (size_t i = begin; i < end; ++i) {
      for (uint32_t u : graph.neighbors(nodes[i])) {
        if (local.emplace(u, static_cast<uint32_t>(nodes.size())).second) {
          nodes.push_back(u);
        }
      }
    }
    begin = end;
  }
  ForwardContext ctx;
  const size_t n = nodes.size();
  ctx.adjacency.rows = ctx.adjacency.cols = n;
  ctx.adjacency.offsets.assign(1, 0);
  for (uint32_t v : nodes) {
    const SparseMatrix& a = full.adjacency;
    for (size_t p = a.offsets[v]; p < a.offsets[v + 1]; ++p) {
      auto it = local.find(a.indices[p]);
      if (it == local.end()) continue;
      ctx.adjacency.indices.push_back(it->second);
      ctx.adjacency.values.push_back(a.values[p]);
    }
    ctx.adjacency.offsets.push_back(ctx.adjacency.indices.size());
  }
  ctx.features = Matrix(n, full.features.cols);
  ctx.labels.resize(n);
  for (size_t i = 0; i < n; ++i) {
    auto row = full.features.row(nodes[i]);
    std::copy(row.begin(), row.end(), ctx.features.data.begin() + i * full.features.cols);
    ctx.labels[i] = full.labels[nodes[i]];
  }
  ctx.node_ids = std::move(nodes);
  return ctx;
}

namespace {

struct Graph {
  Tape tape;
  std::vector<Tape::Var> weights;
  std::vector<Tape::Var> biases;
  Tape::Var logits = 0;
};

void BuildForward(const ForwardContext* ctx, const Matrix& features,
                  const ModelParams& params, bool track, Graph& g) {
  const auto& layers = params.layers();
  if (features.cols != layers.front().in_dim) {
    Fail(ErrorCode::kShape, "feature width " + std::to_string(features.cols) +
                                " does not match model input " +
                                std::to_string(layers.front().in_dim));
  }
  Tape::Var h = g.tape.Constant(features);
  for (size_t l = 0; l < layers.size(); ++l) {
    const Tape::Var w = track ? g.tape.Parameter(params.Weight(l))
                              : g.tape.Constant(params.Weight(l));
    const Tape::Var b = track ? g.tape.Parameter(params.Bias(l))
                              : g.tape.Constant(params.Bias(l));
    g.weights.push_back(w);
    g.biases.push_back(b);
    Tape::Var z = g.tape.MatMul(h, w);
    if (layers[l].kind == LayerKind::kGcnConv) {
      if (ctx == nullptr) Fail(ErrorCode::kShape, "graph layer needs an adjacency");
      if (ctx->adjacency.rows != features.rows) {
        Fail(ErrorCode::kShape, "adjacency and feature rows differ");
      }
      z = g.tape.SpMM(ctx->adjacency, z);
    }
    z = g.tape.AddRowBias(z, b);
    h = l + 1 < layers.size() ? g.tape.Relu(z) : z;
  }
  g.logits = h;
}

}  // namespace

Matrix Forward(const ForwardContext& ctx, const ModelParams& params) {
  Graph g;
  BuildForward(&ctx, ctx.features, params, false, g);
  return g.tape.value(g.logits);
}

Matrix MlpForward(const Matrix& features, const ModelParams& params) {
  Graph g;
  BuildForward(nullptr, features, params, false, g);
  return g.tape.value(g.logits);
}

LossAndGrad ComputeLossAndGrad(const ForwardContext& ctx, const ModelParams& params,
                               std::span<const uint32_t> rows) {
  if (rows.empty()) Fail(ErrorCode::kInvalidArgument, "loss mask selects no nodes");
  Graph g;
  BuildForward(params.IsGcn() ? &ctx : nullptr, ctx.features, params, true, g);
  const Tape::Var loss = g.tape.MeanSoftmaxCrossEntropy(g.logits, ctx.labels, rows);
  g.tape.Backward(loss);

  LossAndGrad out;
  out.loss = g.tape.value(loss)(0, 0);
  out.grad.assign(params.size(), 0.0);
  for (size_t l = 0; l < params.layers().size(); ++l) {
    const Matrix& gw = g.tape.grad(g.weights[l]);
    const Matrix& gb = g.tape.grad(g.biases[l]);
    std::copy(gw.data.begin(), gw.data.end(), out.grad.begin() + params.weight_offset(l));
    std::copy(gb.data.begin(), gb.data.end(), out.grad.begin() + params.bias_offset(l));
  }
  out.logits = g.tape.value(g.logits);
  return out;
}

Matrix Softmax(const Matrix& logits) {
  Matrix p(logits.rows, logits.cols);
  for (size_t r = 0; r < logits.rows; ++r) {
    auto z = logits.row(r);
    const double peak = *std::max_element(z.begin(), z.end());
    double denom = 0.0;
    for (size_t c = 0; c < z.size(); ++c) denom += std::exp(z[c] - peak);
    for (size_t c = 0; c < z.size(); ++c) p(r, c) = std::exp(z[c] - peak) / denom;
  }
  return p;
}

int ArgMax(std::span<const double> row) {
  int best = 0;
  for (size_t c = 1; c < row.size(); ++c) {
    if (row[c] > row[static_cast<size_t>(best)]) best = static_cast<int>(c);
  }
  return best;
}

double Accuracy(const Matrix& logits, std::span<const int> labels,
                std::span<const uint32_t> rows) {
  if (rows.empty()) Fail(ErrorCode::kInvalidArgument, "accuracy over an empty mask");
  size_t correct = 0;
  for (uint32_t r : rows) correct += ArgMax(logits.row(r)) == labels[r];
  return static_cast<double>(correct) / static_cast<double>(rows.size());
}

}  // namespace gnndp
