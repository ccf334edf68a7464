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

#include "gnn/trainer.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "common/error.h"
#include "common/random.h"
#include "dp/accountant.h"
#include "dp/clipping.h"
#include "dp/delta_policy.h"
#include "dp/subgraph_sampler.h"
#include "json.hpp"

namespace gnndp {
namespace {

class Optimizer {
 public:
  Optimizer(const TrainConfig& config, size_t n)
      : kind_(config.optimizer),
        lr_(config.learning_rate),
        momentum_(config.momentum),
        m_(n, 0.0),
        v_(kind_ == OptimizerKind::kAdam ? n : 0, 0.0) {}

  void Step(std::vector<double>& params, std::span<const double> grad) {
    ++t_;
    if (kind_ == OptimizerKind::kSgd) {
      for (size_t i = 0; i < params.size(); ++i) {
        m_[i] = momentum_ * m_[i] + grad[i];
        params[i] -= lr_ * m_[i];
      }
      return;
    }
    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    for (size_t i = 0; i < params.size(); ++i) {
      m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grad[i];
      v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grad[i] * grad[i];
      params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kEps);
    }
  }

 private:
  OptimizerKind kind_;
  double lr_;
  double momentum_;
  size_t t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

struct Checkpoint {
  bool has_val = false;
  double best_val = -1.0;
  size_t best_epoch = 0;
  std::vector<double> best_params;

  // Without a validation set the latest parameters always win.
  void Offer(double val_acc, size_t epoch, std::span<const double> params) {
    if (has_val && !best_params.empty() && val_acc <= best_val) return;
    best_val = val_acc;
    best_epoch = epoch;
    best_params.assign(params.begin(), params.end());
  }
};

void AddInto(std::vector<double>& acc, std::span<const double> g) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += g[i];
}

TrainResult TrainFullGraph(const PopulationGraph& graph, const TrainConfig& config) {
  const ForwardContext ctx = MakeGraphContext(graph);
  const auto train = graph.NodesWithSplit(SplitTag::kTrain);
  const auto val = graph.NodesWithSplit(SplitTag::kVal);
  Require(!train.empty(), "training mask is empty");

  std::vector<ForwardContext> egos;
  if (config.clipping) {
    const size_t hops = config.model == ModelKind::kGcn ? config.num_layers : 0;
    egos.reserve(train.size());
    for (uint32_t v : train) egos.push_back(MakeEgoContext(graph, ctx, v, hops));
  }

  TrainResult result;
  result.params = InitialParams(graph, config);
  Optimizer opt(config, result.params.size());
  Checkpoint ckpt;
  ckpt.has_val = !val.empty();
  const std::vector<uint32_t> root_row = {0};

  for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
    TrainLogRecord rec;
    rec.epoch = epoch;
    rec.step = epoch;
    std::vector<double> grad;
    Matrix logits;
    if (!config.clipping) {
      LossAndGrad lg = ComputeLossAndGrad(ctx, result.params, train);
      rec.loss = lg.loss;
      grad = std::move(lg.grad);
      logits = std::move(lg.logits);
    } else {
      grad.assign(result.params.size(), 0.0);
      double loss = 0.0;
      for (const auto& ego : egos) {
        LossAndGrad lg = ComputeLossAndGrad(ego, result.params, root_row);
        loss += lg.loss;
        ClipInPlace(lg.grad, config.clip_norm);
        AddInto(grad, lg.grad);
      }
      const double inv = 1.0 / static_cast<double>(egos.size());
      for (double& g : grad) g *= inv;
      rec.loss = loss * inv;
      logits = Forward(ctx, result.params);
    }
    rec.train_acc = Accuracy(logits, ctx.labels, train);
    rec.val_acc = val.empty() ? 0.0 : Accuracy(logits, ctx.labels, val);
    ckpt.Offer(rec.val_acc, epoch, result.params.flat());
    result.log.push_back(rec);
    opt.Step(result.params.mutable_flat(), grad);
  }
  // Offer the parameters left after the final update as well.
  const Matrix final_logits = Forward(ctx, result.params);
  const double final_val = val.empty() ? 0.0 : Accuracy(final_logits, ctx.labels, val);
  ckpt.Offer(final_val, config.epochs, result.params.flat());

  result.best_epoch = ckpt.best_epoch;
  result.best_val_acc = ckpt.has_val ? ckpt.best_val : 0.0;
  result.params = ModelParams(result.params.layers(), ckpt.best_params,
                              result.params.init_seed());
  return result;
}

TrainResult TrainSubgraphs(const PopulationGraph& graph, const TrainConfig& config,
                           const PrivacySpec* dp) {
  const size_t K = dp ? dp->max_degree : config.max_degree;
  const size_t requested_T = dp ? dp->occurrence_bound : config.occurrence_bound;
  const size_t m_req = dp ? dp->batch_size : config.batch_size;
  const size_t steps = dp ? dp->total_steps : config.steps;
  const double clip_norm = dp ? dp->clip_norm : config.clip_norm;

  SamplerOptions sampler;
  sampler.max_degree = K;
  sampler.hops = config.model == ModelKind::kGcn ? config.num_layers : 1;
  sampler.occurrence_bound = requested_T;
  sampler.seed = MixSeed(config.seed, streams::kSampler);
  const size_t T = sampler.ResolvedOccurrenceBound();
  SamplingResult sampled = SampleTrainingSubgraphs(graph, sampler);
  const size_t N = sampled.subgraphs.size();
  Require(m_req >= 1 && m_req <= N,
          "batch size must satisfy 1 <= m <= number of training subgraphs (m=" +
              std::to_string(m_req) + ", N=" + std::to_string(N) + ")");

  TrainResult result;
  result.num_subgraphs = N;
  result.starved_roots = sampled.starved_roots;
  result.occurrence_bound = T;

  std::optional<AccountantState> accountant;
  double sigma = 0.0;
  double delta = 0.0;
  if (dp) {
    delta = dp->delta > 0.0 ? dp->delta : RecommendDelta(N);
    if (dp->sigma > 0.0) {
      sigma = dp->sigma;
    } else {
      CalibrationProblem problem{dp->epsilon_target, delta, steps, N, T, m_req};
      sigma = CalibrateSigma(problem).sigma;
    }
    accountant.emplace(sigma, N, T, m_req);
    result.sigma = sigma;
    result.delta = delta;
  }

  std::vector<ForwardContext> contexts;
  contexts.reserve(N);
  for (const auto& sub : sampled.subgraphs) {
    contexts.push_back(MakeSubgraphContext(graph, sub));
  }

  const ForwardContext full = MakeGraphContext(graph);
  const auto train = graph.NodesWithSplit(SplitTag::kTrain);
  const auto val = graph.NodesWithSplit(SplitTag::kVal);

  result.params = InitialParams(graph, config);
  Optimizer opt(config, result.params.size());
  Checkpoint ckpt;
  ckpt.has_val = !val.empty();

  Rng batch_rng = MakeRng(config.seed, streams::kBatch);
  Rng noise_rng = MakeRng(config.seed, streams::kNoise);
  std::vector<uint32_t> pool(N);
  std::iota(pool.begin(), pool.end(), 0u);
  const std::vector<uint32_t> root_row = {0};
  const size_t steps_per_epoch = (N + m_req - 1) / m_req;

  std::vector<std::vector<double>> grads(m_req);
  double epoch_loss = 0.0;
  size_t epoch_count = 0;
  size_t epoch = 0;
  for (size_t step = 0; step < steps; ++step) {
    // Partial Fisher-Yates: the first m entries form a uniform draw without
    // replacement.
    for (size_t i = 0; i < m_req; ++i) {
      std::swap(pool[i], pool[i + UniformIndex(batch_rng, N - i)]);
    }
    for (size_t i = 0; i < m_req; ++i) {
      LossAndGrad lg = ComputeLossAndGrad(contexts[pool[i]], result.params, root_row);
      epoch_loss += lg.loss;
      ++epoch_count;
      grads[i] = std::move(lg.grad);
    }
    std::vector<double> update;
    if (config.noise) {
      update = NoisyBatchGradient(grads, clip_norm, sigma, noise_rng);
    } else if (config.clipping) {
      update = ClippedSum(grads, clip_norm);
      for (double& g : update) g /= static_cast<double>(m_req);
    } else {
      update.assign(result.params.size(), 0.0);
      for (const auto& g : grads) AddInto(update, g);
      for (double& g : update) g /= static_cast<double>(m_req);
    }
    opt.Step(result.params.mutable_flat(), update);

    const bool boundary = (step + 1) % steps_per_epoch == 0 || step + 1 == steps;
    if (!boundary) continue;
    const Matrix logits = Forward(full, result.params);
    TrainLogRecord rec;
    rec.epoch = epoch++;
    rec.step = step + 1;
    rec.loss = epoch_loss / static_cast<double>(epoch_count);
    rec.train_acc = Accuracy(logits, full.labels, train);
    rec.val_acc = val.empty() ? 0.0 : Accuracy(logits, full.labels, val);
    if (accountant) rec.epsilon_spent = accountant->EpsilonAfter(step + 1, delta).epsilon;
    ckpt.Offer(rec.val_acc, rec.epoch, result.params.flat());
    result.log.push_back(rec);
    epoch_loss = 0.0;
    epoch_count = 0;
  }
  if (accountant) {
    const EpsilonResult spent = accountant->EpsilonAfter(steps, delta);
    result.epsilon_spent = spent.epsilon;
    result.rdp_order = spent.order;
  }
  if (ckpt.best_params.empty()) {
    ckpt.best_params.assign(result.params.flat().begin(), result.params.flat().end());
  }
  result.best_epoch = ckpt.best_epoch;
  result.best_val_acc = ckpt.has_val ? ckpt.best_val : 0.0;
  result.params = ModelParams(result.params.layers(), ckpt.best_params,
                              result.params.init_seed());
  return result;
}

}  // namespace

void TrainConfig::Validate() const {
  Require(num_layers >= 1, "num_layers must be >= 1");
  Require(num_layers == 1 || hidden_dim >= 1, "hidden_dim must be >= 1");
  Require(learning_rate >= 0.0 && std::isfinite(learning_rate),
          "learning rate must be finite and nonnegative");
  Require(!clipping || clip_norm > 0.0, "clip norm must be positive");
  Require(!noise || (clipping && mode == TrainMode::kSubgraphBatch),
          "noise requires clipping and subgraph_batch mode");
  Require(mode != TrainMode::kSubgraphBatch || batch_size >= 1, "batch size must be >= 1");
}

ModelParams InitialParams(const PopulationGraph& graph, const TrainConfig& config) {
  const size_t classes = static_cast<size_t>(graph.num_classes());
  auto layers = config.model == ModelKind::kGcn
                    ? GcnLayers(graph.feat_dim(), config.hidden_dim, classes, config.num_layers)
                    : MlpLayers(graph.feat_dim(), config.hidden_dim, classes, config.num_layers);
  return ModelParams::Initialize(std::move(layers), MixSeed(config.seed, streams::kInit));
}

TrainResult Train(const PopulationGraph& graph, const TrainConfig& config,
                  const PrivacySpec* dp) {
  config.Validate();
  if (dp) {
    dp->Validate();
    Require(config.mode == TrainMode::kSubgraphBatch && config.clipping && config.noise,
            "DP training needs subgraph_batch mode with clipping and noise on");
  } else {
    Require(!config.noise, "noise needs a privacy spec");
  }
  if (config.mode == TrainMode::kFullGraph) return TrainFullGraph(graph, config);
  return TrainSubgraphs(graph, config, dp);
}

Matrix PredictLogits(const PopulationGraph& graph, const ModelParams& params) {
  return Forward(MakeGraphContext(graph), params);
}

double Evaluate(const PopulationGraph& graph, const ModelParams& params, SplitTag split) {
  const auto rows = graph.NodesWithSplit(split);
  if (rows.empty()) Fail(ErrorCode::kInvalidArgument, "evaluation mask is empty");
  return Accuracy(PredictLogits(graph, params), graph.labels(), rows);
}

std::string FormatTrainLog(const std::vector<TrainLogRecord>& log) {
  std::ostringstream out;
  for (const auto& r : log) {
    nlohmann::ordered_json j;
    j["epoch"] = r.epoch;
    j["step"] = r.step;
    j["loss"] = r.loss;
    j["train_acc"] = r.train_acc;
    j["val_acc"] = r.val_acc;
    if (r.epsilon_spent) j["epsilon_spent"] = *r.epsilon_spent;
    out << j.dump() << '\n';
  }
  return out.str();
}

const char* ModelKindName(ModelKind kind) { return kind == ModelKind::kGcn ? "gcn" : "mlp"; }

ModelKind ParseModelKind(const std::string& name) {
  if (name == "gcn") return ModelKind::kGcn;
  if (name == "mlp") return ModelKind::kMlp;
  Fail(ErrorCode::kParse, "unknown model kind: " + name);
}

const char* OptimizerName(OptimizerKind kind) {
  return kind == OptimizerKind::kAdam ? "adam" : "sgd";
}

OptimizerKind ParseOptimizer(const std::string& name) {
  if (name == "adam") return OptimizerKind::kAdam;
  if (name == "sgd") return OptimizerKind::kSgd;
  Fail(ErrorCode::kParse, "unknown optimizer: " + name);
}

const char* TrainModeName(TrainMode mode) {
  return mode == TrainMode::kFullGraph ? "full_graph" : "subgraph_batch";
}

TrainMode ParseTrainMode(const std::string& name) {
  if (name == "full_graph") return TrainMode::kFullGraph;
  if (name == "subgraph_batch") return TrainMode::kSubgraphBatch;
  Fail(ErrorCode::kParse, "unknown training mode: " + name);
}

}  // namespace gnndp
