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

#ifndef GNNDP_GNN_TRAINER_H_
#define GNNDP_GNN_TRAINER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dp/privacy_spec.h"
#include "gnn/gcn.h"
#include "gnn/model_params.h"
#include "graph/population_graph.h"

namespace gnndp {

enum class ModelKind { kGcn, kMlp };
enum class OptimizerKind { kSgd, kAdam };
enum class TrainMode { kFullGraph, kSubgraphBatch };

// Training regime. The five ablations map onto it as:
//   non-DP           full_graph
//   clipping         full_graph + clipping (per-node gradients)
//   sub-graphing     subgraph_batch
//   subg. + clip.    subgraph_batch + clipping
//   DP               subgraph_batch + clipping + noise, with a PrivacySpec
struct TrainConfig {
  ModelKind model = ModelKind::kGcn;
  size_t num_layers = 2;
  size_t hidden_dim = 32;
  double learning_rate = 1e-2;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  double momentum = 0.9;  // sgd only
  size_t epochs = 200;    // full_graph
  size_t steps = 1000;    // subgraph_batch
  uint64_t seed = 0;
  TrainMode mode = TrainMode::kFullGraph;
  bool clipping = false;
  double clip_norm = 1.0;
  bool noise = false;
  // Sub-graph sampling; a PrivacySpec overrides these when present.
  size_t max_degree = 5;
  size_t occurrence_bound = 0;
  size_t batch_size = 64;

  void Validate() const;
};

struct TrainLogRecord {
  size_t epoch = 0;
  size_t step = 0;
  double loss = 0.0;
  double train_acc = 0.0;
  double val_acc = 0.0;
  std::optional<double> epsilon_spent;
};

struct TrainResult {
  ModelParams params;
  std::vector<TrainLogRecord> log;
  size_t best_epoch = 0;
  double best_val_acc = 0.0;
  // DP runs only.
  std::optional<double> sigma;
  std::optional<double> delta;
  std::optional<double> epsilon_spent;
  std::optional<double> rdp_order;
  // Sub-graph runs only.
  size_t num_subgraphs = 0;
  size_t starved_roots = 0;
  size_t occurrence_bound = 0;
};

// Trains on the graph's train mask and returns the parameters with the best
// validation accuracy (the final parameters when there is no validation set).
// With dp set, sigma is calibrated before the first step unless fixed.
TrainResult Train(const PopulationGraph& graph, const TrainConfig& config,
                  const PrivacySpec* dp = nullptr);

// Whole-graph logits.
Matrix PredictLogits(const PopulationGraph& graph, const ModelParams& params);

// Argmax accuracy over the nodes carrying the given split tag.
double Evaluate(const PopulationGraph& graph, const ModelParams& params, SplitTag split);

ModelParams InitialParams(const PopulationGraph& graph, const TrainConfig& config);

// One JSON object per line: {epoch, step, loss, train_acc, val_acc[, epsilon_spent]}.
std::string FormatTrainLog(const std::vector<TrainLogRecord>& log);

const char* ModelKindName(ModelKind kind);
ModelKind ParseModelKind(const std::string& name);
const char* OptimizerName(OptimizerKind kind);
OptimizerKind ParseOptimizer(const std::string& name);
const char* TrainModeName(TrainMode mode);
TrainMode ParseTrainMode(const std::string& name);

}  // namespace gnndp

#endif  // GNNDP_GNN_TRAINER_H_
