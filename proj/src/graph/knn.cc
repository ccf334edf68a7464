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

#include "graph/knn.h"

#include <algorithm>
#include <cmath>

#include "common/error.h"
#include "common/parallel.h"

namespace gnndp {

KnnMetric ParseKnnMetric(std::string_view name) {
  if (name == "euclidean") return KnnMetric::kEuclidean;
  if (name == "cosine") return KnnMetric::kCosine;
  Fail(ErrorCode::kInvalidArgument, "unknown k-NN metric: " + std::string(name));
}

const char* KnnMetricName(KnnMetric metric) {
  return metric == KnnMetric::kEuclidean ? "euclidean" : "cosine";
}

PopulationGraph BuildKnnGraph(const PopulationGraph& graph, size_t k,
                              KnnMetric metric, size_t num_threads) {
  const size_t n = graph.num_nodes();
  if (graph.feat_dim() == 0 || n == 0) {
    Fail(ErrorCode::kInvalidArgument, "k-NN needs a non-empty feature matrix");
  }
  if (k < 1 || k >= n) {
    Fail(ErrorCode::kInvalidArgument, "k must satisfy 1 <= k < num_nodes (k=" +
                                          std::to_string(k) + ", n=" +
                                          std::to_string(n) + ")");
  }

  std::vector<double> norms(n, 0.0);
  if (metric == KnnMetric::kCosine) {
    for (size_t v = 0; v < n; ++v) {
      double s = 0.0;
      for (double x : graph.feature_row(v)) s += x * x;
      norms[v] = std::sqrt(s);
    }
  }

  // Squared euclidean keeps the same order as euclidean and skips the sqrt.
  auto distance = [&](size_t a, size_t b) {
    auto xa = graph.feature_row(a);
    auto xb = graph.feature_row(b);
    if (metric == KnnMetric::kEuclidean) {
      double s = 0.0;
      for (size_t j = 0; j < xa.size(); ++j) {
        const double d = xa[j] - xb[j];
        s += d * d;
      }
      return s;
    }
    if (norms[a] == 0.0 || norms[b] == 0.0) return 1.0;
    double dot = 0.0;
    for (size_t j = 0; j < xa.size(); ++j) dot += xa[j] * xb[j];
    return 1.0 - dot / (norms[a] * norms[b]);
  };

  std::vector<std::vector<uint32_t>> nearest(n);
  ParallelFor(n, num_threads, [&](size_t v) {
    std::vector<std::pair<double, uint32_t>> candidates;
    candidates.reserve(n - 1);
    for (size_t u = 0; u < n; ++u) {
      if (u != v) candidates.emplace_back(distance(v, u), static_cast<uint32_t>(u));
    }
    std::partial_sort(candidates.begin(), candidates.begin() + k, candidates.end());
    nearest[v].reserve(k);
    for (size_t i = 0; i < k; ++i) nearest[v].push_back(candidates[i].second);
  });

  std::vector<std::pair<uint32_t, uint32_t>> edges;
  edges.reserve(n * k);
  for (uint32_t v = 0; v < n; ++v) {
    for (uint32_t u : nearest[v]) edges.emplace_back(v, u);
  }
  PopulationGraph out = graph;
  out.SetEdges(edges);
  out.mutable_provenance().generator =
      graph.provenance().generator + "+knn(k=" + std::to_string(k) + "," +
      KnnMetricName(metric) + ")";
  return out;
}

}  // namespace gnndp
