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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "common/error.h"
#include "gnn/gcn.h"
#include "gnn/matrix.h"
#include "gnn/model_io.h"
#include "gnn/model_params.h"
#include "gnn/trainer.h"
#include "graph/splits.h"
#include "graph/synthetic.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "test_util.h"

namespace gnndp {
namespace {

using testing::Edges;
using testing::MakeGraph;
using testing::RandomGraph;

TEST(NormalizeAdjacencyTest, IsolatedNode) {
  const SparseMatrix a = NormalizeAdjacency(1, Edges{});
  EXPECT_DOUBLE_EQ(a.At(0, 0), 1.0);
}

TEST(NormalizeAdjacencyTest, TwoNodeClique) {
  const Matrix a = NormalizeAdjacency(2, Edges{{0, 1}}).ToDense();
  for (double v : a.data) EXPECT_NEAR(v, 0.5, 1e-15);
}

TEST(NormalizeAdjacencyTest, PathGraphRows) {
  const Matrix a = NormalizeAdjacency(3, Edges{{0, 1}, {1, 2}}).ToDense();
  // Degrees with self-loops are (2, 3, 2).
  const double s6 = 1.0 / std::sqrt(6.0);
  const double expected[3] = {0.5 + s6, 1.0 / 3.0 + 2.0 * s6, 0.5 + s6};
  for (size_t r = 0; r < 3; ++r) {
    double sum = 0.0;
    for (size_t c = 0; c < 3; ++c) {
      sum += a(r, c);
      EXPECT_DOUBLE_EQ(a(r, c), a(c, r));
    }
    EXPECT_NEAR(sum, expected[r], 1e-15);
  }
  EXPECT_NEAR(a(0, 1), s6, 1e-15);
  EXPECT_NEAR(a(1, 1), 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(a(0, 2), 0.0);
}

TEST(NormalizeAdjacencyTest, MatchesDenseFormulaOnRandomGraphs) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const PopulationGraph g = RandomGraph(12, 1, 0.3, seed);
    const Matrix a = NormalizeAdjacency(12, g.EdgeList()).ToDense();
    for (size_t i = 0; i < 12; ++i) {
      for (size_t j = 0; j < 12; ++j) {
        const double aij = (i == j || g.HasEdge(i, j)) ? 1.0 : 0.0;
        const double di = static_cast<double>(g.degree(i) + 1);
        const double dj = static_cast<double>(g.degree(j) + 1);
        EXPECT_NEAR(a(i, j), aij / std::sqrt(di * dj), 1e-15);
      }
    }
  }
}

ModelParams Linear(std::vector<LayerShape> layers, std::vector<double> flat) {
  return ModelParams(std::move(layers), std::move(flat));
}

TEST(ForwardTest, IsolatedNodeIdentityMap) {
  const PopulationGraph g(1, 2, {0.3, -1.2}, {0}, 2);
  const ModelParams p = Linear({{2, 2, LayerKind::kGcnConv}}, {1, 0, 0, 1, 0, 0});
  const Matrix z = Forward(MakeGraphContext(g), p);
  EXPECT_DOUBLE_EQ(z(0, 0), 0.3);
  EXPECT_DOUBLE_EQ(z(0, 1), -1.2);
}

TEST(ForwardTest, ZeroWeightsGiveUniformSoftmax) {
  const PopulationGraph g = RandomGraph(5, 3, 0.5, 1);
  const ModelParams p(GcnLayers(3, 4, 2, 2),
                      std::vector<double>(ModelParams::FlatLength(GcnLayers(3, 4, 2, 2)), 0.0));
  const Matrix z = Forward(MakeGraphContext(g), p);
  for (double v : z.data) EXPECT_EQ(v, 0.0);
  const Matrix s = Softmax(z);
  for (double v : s.data) EXPECT_DOUBLE_EQ(v, 0.5);
}

TEST(ForwardTest, TwoNodeCliqueHandExample) {
  const PopulationGraph g = MakeGraph(2, 1, {1, 3}, {0, 0}, {{0, 1}}, 1);
  const ModelParams p = Linear({{1, 1, LayerKind::kGcnConv}}, {1, 0});
  const Matrix z = Forward(MakeGraphContext(g), p);
  EXPECT_NEAR(z(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(z(1, 0), 2.0, 1e-15);
}

TEST(ForwardTest, FeatureWidthMismatchIsShapeError) {
  const PopulationGraph g = RandomGraph(4, 3, 0.5, 1);
  const ModelParams p = ModelParams::Initialize(GcnLayers(2, 4, 2, 2), 0);
  EXPECT_GNNDP_ERROR(Forward(MakeGraphContext(g), p), ErrorCode::kShape);
}

TEST(ForwardTest, MlpIgnoresEdges) {
  const PopulationGraph a = RandomGraph(10, 3, 0.0, 2);
  const PopulationGraph b = RandomGraph(10, 3, 0.5, 2);
  ASSERT_TRUE(std::equal(a.features().begin(), a.features().end(), b.features().begin()));
  const ModelParams p = ModelParams::Initialize(MlpLayers(3, 8, 2, 2), 5);
  EXPECT_EQ(Forward(MakeGraphContext(a), p).data, Forward(MakeGraphContext(b), p).data);
}

TEST(LossTest, ZeroLogitsGiveLn2) {
  const PopulationGraph g = RandomGraph(4, 2, 0.5, 3);
  const auto layers = GcnLayers(2, 3, 2, 2);
  const ModelParams p(layers, std::vector<double>(ModelParams::FlatLength(layers), 0.0));
  const std::vector<uint32_t> rows = {0, 1, 2, 3};
  EXPECT_NEAR(ComputeLossAndGrad(MakeGraphContext(g), p, rows).loss, std::log(2.0), 1e-12);
}

TEST(LossTest, SaturatedLogitsGiveNearZeroLoss) {
  // One dense layer mapping one-hot features to 1000 * one-hot logits.
  const PopulationGraph g(2, 2, {1, 0, 0, 1}, {0, 1}, 2);
  const ModelParams p = Linear({{2, 2, LayerKind::kDense}}, {1000, 0, 0, 1000, 0, 0});
  const std::vector<uint32_t> rows = {0, 1};
  const LossAndGrad lg = ComputeLossAndGrad(MakeGraphContext(g), p, rows);
  EXPECT_LT(lg.loss, 1e-6);
  EXPECT_GE(lg.loss, 0.0);
}

TEST(LossTest, EmptyMaskIsError) {
  const PopulationGraph g = RandomGraph(4, 2, 0.5, 3);
  const ModelParams p = ModelParams::Initialize(GcnLayers(2, 3, 2, 2), 0);
  EXPECT_GNNDP_ERROR(ComputeLossAndGrad(MakeGraphContext(g), p, {}),
                     ErrorCode::kInvalidArgument);
}

TEST(LossTest, SoftmaxRowsSumToOne) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 30.0);
  Matrix z(50, 4);
  for (double& v : z.data) v = n(rng);
  const Matrix s = Softmax(z);
  for (size_t r = 0; r < 50; ++r) {
    double sum = 0.0;
    for (double v : s.row(r)) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

std::vector<uint32_t> RandomRows(size_t n, std::mt19937_64& rng) {
  std::vector<uint32_t> rows;
  for (uint32_t v = 0; v < n; ++v) {
    if (rng() % 2) rows.push_back(v);
  }
  if (rows.empty()) rows.push_back(0);
  return rows;
}

TEST(GradientTest, GcnMatchesFiniteDifferences) {
  std::mt19937_64 rng(17);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const size_t n = 4 + rng() % 13;
    const PopulationGraph g = RandomGraph(n, 3, 0.3, seed, 3);
    const ModelParams p = ModelParams::Initialize(GcnLayers(3, 5, 3, 2), seed);
    EXPECT_LE(testing::MaxGradientError(MakeGraphContext(g), p, RandomRows(n, rng)), 1e-4)
        << "seed " << seed;
  }
}

TEST(GradientTest, MlpMatchesFiniteDifferences) {
  std::mt19937_64 rng(18);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const size_t n = 4 + rng() % 13;
    const PopulationGraph g = RandomGraph(n, 3, 0.3, seed + 100, 2);
    const ModelParams p = ModelParams::Initialize(MlpLayers(3, 6, 2, 2), seed);
    EXPECT_LE(testing::MaxGradientError(MakeGraphContext(g), p, RandomRows(n, rng)), 1e-4)
        << "seed " << seed;
  }
}

TEST(GradientTest, SingleLayerGcn) {
  const PopulationGraph g = RandomGraph(8, 2, 0.4, 9, 2);
  const ModelParams p = ModelParams::Initialize(GcnLayers(2, 0, 2, 1), 3);
  const std::vector<uint32_t> rows = {0, 3, 5};
  EXPECT_LE(testing::MaxGradientError(MakeGraphContext(g), p, rows), 1e-4);
}

TEST(EquivarianceTest, PermutationLeavesLossAndAccuracyUnchanged) {
  std::mt19937_64 rng(4);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const size_t n = 15;
    const PopulationGraph g = RandomGraph(n, 3, 0.25, seed);
    std::vector<uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> x(n * 3);
    std::vector<int> y(n);
    for (uint32_t v = 0; v < n; ++v) {
      std::copy(g.feature_row(v).begin(), g.feature_row(v).end(), x.begin() + perm[v] * 3);
      y[perm[v]] = g.label(v);
    }
    Edges edges;
    for (auto [u, v] : g.EdgeList()) edges.emplace_back(perm[u], perm[v]);
    const PopulationGraph h = MakeGraph(n, 3, x, y, edges);

    const std::vector<uint32_t> rows = RandomRows(n, rng);
    std::vector<uint32_t> prows;
    for (uint32_t r : rows) prows.push_back(perm[r]);
    const ModelParams p = ModelParams::Initialize(GcnLayers(3, 8, 2, 2), seed);
    const LossAndGrad a = ComputeLossAndGrad(MakeGraphContext(g), p, rows);
    const LossAndGrad b = ComputeLossAndGrad(MakeGraphContext(h), p, prows);
    EXPECT_NEAR(a.loss, b.loss, 1e-9);
    for (size_t i = 0; i < a.grad.size(); ++i) EXPECT_NEAR(a.grad[i], b.grad[i], 1e-9);
    EXPECT_NEAR(Accuracy(a.logits, g.labels(), rows), Accuracy(b.logits, h.labels(), prows),
                1e-9);
  }
}

std::vector<uint8_t> Ball(const PopulationGraph& g, uint32_t v, size_t r) {
  std::vector<uint8_t> in(g.num_nodes(), 0);
  std::vector<uint32_t> frontier = {v};
  in[v] = 1;
  for (size_t h = 0; h < r; ++h) {
    std::vector<uint32_t> next;
    for (uint32_t u : frontier) {
      for (uint32_t w : g.neighbors(u)) {
        if (!in[w]) {
          in[w] = 1;
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  return in;
}

TEST(LocalityTest, LogitsDependOnlyOnRHopBall) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const PopulationGraph g = RandomGraph(30, 3, 0.08, seed);
    const ModelParams p = ModelParams::Initialize(GcnLayers(3, 8, 2, 2), seed);
    const ForwardContext full = MakeGraphContext(g);
    const Matrix z = Forward(full, p);
    const uint32_t v = static_cast<uint32_t>(seed % 30);
    const std::vector<uint8_t> ball = Ball(g, v, 2);
    ForwardContext masked = full;
    for (size_t u = 0; u < 30; ++u) {
      if (ball[u]) continue;
      for (size_t c = 0; c < 3; ++c) masked.features(u, c) = 0.0;
    }
    const Matrix zm = Forward(masked, p);
    for (size_t c = 0; c < 2; ++c) EXPECT_NEAR(z(v, c), zm(v, c), 1e-12);

    // The ego context used for full-graph clipping reproduces the same row.
    const ForwardContext ego = MakeEgoContext(g, full, v, 2);
    const Matrix ze = Forward(ego, p);
    for (size_t c = 0; c < 2; ++c) EXPECT_NEAR(z(v, c), ze(0, c), 1e-12);
  }
}

TEST(AccuracyTest, OneHotLogitsArePerfect) {
  const Matrix z(4, 2, {1, 0, 0, 1, 0, 1, 1, 0});
  const std::vector<int> y = {0, 1, 1, 0};
  const std::vector<uint32_t> rows = {0, 1, 2, 3};
  EXPECT_DOUBLE_EQ(Accuracy(z, y, rows), 1.0);
}

TEST(AccuracyTest, ZeroLogitsTieBreakToClassZero) {
  const Matrix z(4, 2, 0.0);
  const std::vector<int> y = {0, 1, 0, 1};
  const std::vector<uint32_t> rows = {0, 1, 2, 3};
  EXPECT_DOUBLE_EQ(Accuracy(z, y, rows), 0.5);
  EXPECT_EQ(ArgMax(z.row(0)), 0);
}

TEST(AccuracyTest, EmptyMaskIsError) {
  const Matrix z(2, 2, 0.0);
  const std::vector<int> y = {0, 1};
  EXPECT_GNNDP_ERROR(Accuracy(z, y, {}), ErrorCode::kInvalidArgument);
}

PopulationGraph SyntheticSplit(double h, uint64_t seed, size_t n = 1000) {
  SyntheticSpec spec;
  spec.num_nodes = n;
  spec.target_homophily = h;
  spec.seed = seed;
  return AssignSplits(GenerateSynthetic(spec), {0.56, 0.14, 0.30, seed});
}

TEST(ModelParamsTest, FlatLengthAndInit) {
  const auto layers = GcnLayers(10, 32, 2, 2);
  EXPECT_EQ(ModelParams::FlatLength(layers), 10u * 32 + 32 + 32 * 2 + 2);
  const ModelParams a = ModelParams::Initialize(layers, 1);
  const ModelParams b = ModelParams::Initialize(layers, 1);
  EXPECT_TRUE(std::equal(a.flat().begin(), a.flat().end(), b.flat().begin()));
  for (double x : a.flat()) EXPECT_TRUE(std::isfinite(x));
  EXPECT_GNNDP_ERROR(ModelParams(layers, std::vector<double>(3, 0.0)), ErrorCode::kShape);
}

TEST(ModelIoTest, RoundTripIsBitExact) {
  const ModelParams p = ModelParams::Initialize(GcnLayers(4, 6, 3, 2), 12);
  const std::string bytes = SerializeParams(p);
  EXPECT_EQ(bytes.substr(0, 1), "{");
  const ModelParams q = DeserializeParams(bytes);
  ASSERT_EQ(q.size(), p.size());
  EXPECT_TRUE(std::equal(p.flat().begin(), p.flat().end(), q.flat().begin()));
  EXPECT_EQ(q.layers().size(), 2u);
  EXPECT_EQ(q.layers()[1].out_dim, 3u);
  EXPECT_EQ(q.init_seed(), 12u);

  const std::string dir = testing::TempDir("model");
  SaveParams(p, dir + "/m.bin");
  EXPECT_EQ(SerializeParams(LoadParams(dir + "/m.bin")), bytes);
}

TEST(ModelIoTest, RejectsTruncatedPayload) {
  const std::string bytes = SerializeParams(ModelParams::Initialize(GcnLayers(2, 2, 2, 2), 0));
  EXPECT_GNNDP_ERROR(DeserializeParams(bytes.substr(0, bytes.size() - 3)), ErrorCode::kParse);
  EXPECT_GNNDP_ERROR(DeserializeParams("garbage"), ErrorCode::kParse);
}

TEST(TrainerTest, HighHomophilyFullGraphReachesTarget) {
  const PopulationGraph g = SyntheticSplit(0.9, 0);
  TrainConfig config;
  const TrainResult r = Train(g, config);
  EXPECT_GE(Evaluate(g, r.params, SplitTag::kTest), 0.99);
  EXPECT_EQ(r.log.size(), config.epochs);
}

TEST(TrainerTest, ZeroLearningRateLeavesParamsUnchanged) {
  const PopulationGraph g = SyntheticSplit(0.9, 1, 200);
  TrainConfig config;
  config.learning_rate = 0.0;
  config.epochs = 20;
  const TrainResult r = Train(g, config);
  const ModelParams init = InitialParams(g, config);
  EXPECT_TRUE(std::equal(init.flat().begin(), init.flat().end(), r.params.flat().begin()));
  for (const auto& rec : r.log) EXPECT_DOUBLE_EQ(rec.loss, r.log.front().loss);
}

TEST(TrainerTest, FullGraphTrainingIsDeterministic) {
  const PopulationGraph g = SyntheticSplit(0.7, 2, 200);
  TrainConfig config;
  config.epochs = 30;
  config.seed = 9;
  const TrainResult a = Train(g, config);
  const TrainResult b = Train(g, config);
  EXPECT_TRUE(std::equal(a.params.flat().begin(), a.params.flat().end(),
                         b.params.flat().begin()));
  EXPECT_EQ(FormatTrainLog(a.log), FormatTrainLog(b.log));
}

TEST(TrainerTest, SubgraphTrainingIsDeterministic) {
  const PopulationGraph g = SyntheticSplit(0.7, 2, 200);
  TrainConfig config;
  config.mode = TrainMode::kSubgraphBatch;
  config.steps = 40;
  config.batch_size = 16;
  config.clipping = true;
  const TrainResult a = Train(g, config);
  const TrainResult b = Train(g, config);
  EXPECT_TRUE(std::equal(a.params.flat().begin(), a.params.flat().end(),
                         b.params.flat().begin()));
}

TEST(TrainerTest, RandomParamsAreNearChance) {
  const PopulationGraph g = SyntheticSplit(0.5, 3);
  double sum = 0.0;
  for (uint64_t s = 0; s < 5; ++s) {
    TrainConfig config;
    config.seed = s;
    const double acc = Evaluate(g, InitialParams(g, config), SplitTag::kTest);
    EXPECT_NEAR(acc, 0.5, 0.25) << "seed " << s;
    sum += acc;
  }
  EXPECT_NEAR(sum / 5.0, 0.5, 0.1);
}

TEST(TrainerTest, DpRunStaysWithinBudget) {
  const PopulationGraph g = SyntheticSplit(0.9, 4, 300);
  TrainConfig config;
  config.mode = TrainMode::kSubgraphBatch;
  config.clipping = true;
  config.noise = true;
  PrivacySpec dp;
  dp.epsilon_target = 5.0;
  dp.total_steps = 50;
  dp.batch_size = 32;
  const TrainResult r = Train(g, config, &dp);
  ASSERT_TRUE(r.epsilon_spent.has_value());
  EXPECT_LE(*r.epsilon_spent, 5.0);
  ASSERT_FALSE(r.log.empty());
  ASSERT_TRUE(r.log.back().epsilon_spent.has_value());
  EXPECT_LE(*r.log.back().epsilon_spent, 5.0);
  EXPECT_GT(*r.sigma, 0.0);
}

TEST(TrainerTest, InfeasibleBudgetFailsBeforeTraining) {
  const PopulationGraph g = SyntheticSplit(0.9, 4, 100);
  TrainConfig config;
  config.mode = TrainMode::kSubgraphBatch;
  config.clipping = true;
  config.noise = true;
  PrivacySpec dp;
  dp.epsilon_target = 1e-4;
  dp.batch_size = 56;
  dp.total_steps = 100000;
  EXPECT_GNNDP_ERROR(Train(g, config, &dp), ErrorCode::kCalibration);
}

TEST(TrainerTest, InconsistentModeFlagsAreRejected) {
  TrainConfig config;
  config.noise = true;
  EXPECT_GNNDP_ERROR(config.Validate(), ErrorCode::kInvalidArgument);
  config.mode = TrainMode::kSubgraphBatch;
  EXPECT_GNNDP_ERROR(config.Validate(), ErrorCode::kInvalidArgument);
  config.clipping = true;
  EXPECT_NO_THROW(config.Validate());
  config.learning_rate = -1.0;
  EXPECT_GNNDP_ERROR(config.Validate(), ErrorCode::kInvalidArgument);
}

TEST(TrainerTest, NameParsers) {
  EXPECT_EQ(ParseModelKind("mlp"), ModelKind::kMlp);
  EXPECT_EQ(ParseOptimizer("sgd"), OptimizerKind::kSgd);
  EXPECT_EQ(ParseTrainMode("subgraph_batch"), TrainMode::kSubgraphBatch);
  EXPECT_STREQ(TrainModeName(TrainMode::kFullGraph), "full_graph");
  EXPECT_THROW(ParseModelKind("gat"), Error);
}

}  // namespace
}  // namespace gnndp
