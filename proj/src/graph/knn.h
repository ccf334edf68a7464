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

#ifndef GNNDP_GRAPH_KNN_H_
#define GNNDP_GRAPH_KNN_H_

#include <string_view>

#include "graph/population_graph.h"

namespace gnndp {

enum class KnnMetric { kEuclidean, kCosine };

KnnMetric ParseKnnMetric(std::string_view name);
const char* KnnMetricName(KnnMetric metric);

// Connects every node to its k nearest neighbors (itself excluded) and
// symmetrizes by union. Ties in distance go to the lower node index. Existing
// edges of the input are discarded; features, labels and splits are kept.
// Distance rows are computed in parallel; the result does not depend on
// num_threads.
PopulationGraph BuildKnnGraph(const PopulationGraph& graph, size_t k,
                              KnnMetric metric = KnnMetric::kEuclidean,
                              size_t num_threads = 1);

}  // namespace gnndp

#endif  // GNNDP_GRAPH_KNN_H_
