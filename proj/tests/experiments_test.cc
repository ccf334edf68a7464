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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "common/error.h"
#include "common/file_util.h"
#include "experiments/manifest.h"
#include "experiments/report.h"
#include "experiments/runner.h"
#include "experiments/stats.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace gnndp {
namespace {

namespace fs = std::filesystem;

std::string TinyManifest(const std::string& out, const std::string& extra = "") {
  return R"({
    "schema_version": 1,
    "dataset": {"synthetic": {"num_nodes": 100, "homophily": 0.8, "neighbors_per_node": 3}},
    "model": {"epochs": 20, "hidden": 8},
    "variants": ["non_dp", "dp"],
    "privacy": {"epsilons": [5], "steps": 20, "batch_size": 16, "clip_norm": 5},
    "seeds": [0, 1, 2, 3, 4],
    )" + extra + R"("output_dir": ")" + out + R"("
  })";
}

std::vector<std::vector<std::string>> ReadCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

TEST(ManifestTest, ParsesAndDefaults) {
  const ExperimentManifest m = ParseManifest(TinyManifest("/tmp/x"));
  ASSERT_TRUE(m.synthetic.has_value());
  EXPECT_EQ(m.synthetic->num_nodes, 100u);
  EXPECT_EQ(m.graph.k, 5u);
  EXPECT_DOUBLE_EQ(m.split.train_fraction, 0.56);
  EXPECT_EQ(m.model.epochs, 20u);
  EXPECT_EQ(m.variants, (std::vector<Variant>{Variant::kNonDp, Variant::kDp}));
  EXPECT_TRUE(m.has_privacy);
  EXPECT_EQ(m.privacy.steps, 20u);
  EXPECT_FALSE(m.audit.has_value());
  EXPECT_EQ(m.seeds.size(), 5u);
}

TEST(ManifestTest, RejectsInvalidDocuments) {
  EXPECT_GNNDP_ERROR(ParseManifest("{"), ErrorCode::kParse);
  EXPECT_GNNDP_ERROR(ParseManifest(TinyManifest("/x", R"("colour": 1,)")), ErrorCode::kParse);
  EXPECT_GNNDP_ERROR(ParseManifest(R"({"dataset": {"synthetic": {}}, "variants": ["non_dp"],
                                      "seeds": [0], "output_dir": "o"})"),
                     ErrorCode::kParse);
  EXPECT_GNNDP_ERROR(
      ParseManifest(R"({"schema_version": 1, "dataset": {"synthetic": {}}, "variants": ["dp"],
                        "seeds": [0], "output_dir": "o"})"),
      ErrorCode::kInvalidArgument);
  EXPECT_GNNDP_ERROR(
      ParseManifest(R"({"schema_version": 1, "dataset": {"synthetic": {}},
                        "variants": ["non_dp"], "seeds": [], "output_dir": "o"})"),
      ErrorCode::kInvalidArgument);
  EXPECT_GNNDP_ERROR(
      ParseManifest(R"({"schema_version": 1,
                        "dataset": {"synthetic": {}, "csv": {"features": "a", "labels": "b"}},
                        "variants": ["non_dp"], "seeds": [0], "output_dir": "o"})"),
      ErrorCode::kInvalidArgument);
  EXPECT_GNNDP_ERROR(
      ParseManifest(R"({"schema_version": 1, "dataset": {"synthetic": {}},
                        "variants": ["gat"], "seeds": [0], "output_dir": "o"})"),
      ErrorCode::kParse);
  EXPECT_GNNDP_ERROR(
      ParseManifest(TinyManifest("/x", R"("audit": {"n_shadows": 8},)")),
      ErrorCode::kInvalidArgument);
}

TEST(ManifestTest, SerializationRoundTripAndHash) {
  const ExperimentManifest a = ParseManifest(TinyManifest("/tmp/a"));
  const std::string text = SerializeManifest(a);
  const ExperimentManifest b = ParseManifest(text);
  EXPECT_EQ(SerializeManifest(b), text);
  EXPECT_EQ(ManifestHash(a), ManifestHash(ParseManifest(TinyManifest("/tmp/elsewhere"))));
  EXPECT_EQ(ManifestHash(a).size(), 64u);
  ExperimentManifest c = a;
  c.seeds.push_back(9);
  EXPECT_NE(ManifestHash(a), ManifestHash(c));
}

TEST(RunnerTest, EnumeratesCells) {
  ExperimentManifest m = ParseManifest(TinyManifest("/x"));
  m.privacy.epsilons = {10, 5};
  const auto cells = EnumerateCells(m);
  EXPECT_EQ(cells.size(), 5u * 3u);
  EXPECT_EQ(cells[0].Id(), "non_dp_seed0");
  EXPECT_EQ(cells[1].Id(), "dp_eps10_seed0");
  EXPECT_EQ(cells[2].Id(), "dp_eps5_seed0");
}

TEST(RunnerTest, CellConfigsFollowVariant) {
  const ExperimentManifest m = ParseManifest(TinyManifest("/x"));
  const TrainConfig dp = CellTrainConfig(m, {Variant::kDp, 5.0, 0});
  EXPECT_EQ(dp.mode, TrainMode::kSubgraphBatch);
  EXPECT_TRUE(dp.clipping && dp.noise);
  const TrainConfig sub = CellTrainConfig(m, {Variant::kSubgraphing, std::nullopt, 0});
  EXPECT_EQ(sub.mode, TrainMode::kSubgraphBatch);
  EXPECT_FALSE(sub.clipping || sub.noise);
  const TrainConfig clip = CellTrainConfig(m, {Variant::kClipping, std::nullopt, 0});
  EXPECT_EQ(clip.mode, TrainMode::kFullGraph);
  EXPECT_TRUE(clip.clipping);
  EXPECT_EQ(CellTrainConfig(m, {Variant::kMlp, std::nullopt, 0}).model, ModelKind::kMlp);
  EXPECT_TRUE(CellPrivacySpec(m, {Variant::kDp, 5.0, 0}).has_value());
  EXPECT_FALSE(CellPrivacySpec(m, {Variant::kNonDp, std::nullopt, 0}).has_value());
}

TEST(RunnerTest, AggregateShapeAndDeterminism) {
  const std::string dir = testing::TempDir("run");
  ExperimentManifest m = ParseManifest(TinyManifest(dir + "/a"));
  const RunSummary first = RunExperiment(m, 1);
  ASSERT_TRUE(first.ok());
  const std::string csv_a = ReadFile(dir + "/a/aggregate.csv");
  const auto rows = ReadCsv(csv_a);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0][0], "variant");
  EXPECT_EQ(rows[0][6], "summary");
  EXPECT_EQ(rows[1][0], "non_dp");
  EXPECT_EQ(rows[2][0], "dp");
  EXPECT_EQ(rows[2][1], "5");
  EXPECT_EQ(rows[1][2], "5");
  EXPECT_NE(rows[1][6].find(" +- "), std::string::npos);
  EXPECT_EQ(rows[1][7], first.manifest_hash);

  m.output_dir = dir + "/b";
  const RunSummary second = RunExperiment(m, 2);
  EXPECT_EQ(ReadFile(dir + "/b/aggregate.csv"), csv_a);
  for (const auto& key : EnumerateCells(m)) {
    EXPECT_EQ(ReadFile(dir + "/a/cells/" + key.Id() + ".json"),
              ReadFile(dir + "/b/cells/" + key.Id() + ".json"));
  }
}

TEST(RunnerTest, AggregateMatchesPerCellFiles) {
  const std::string dir = testing::TempDir("run");
  const ExperimentManifest m = ParseManifest(TinyManifest(dir));
  const RunSummary s = RunExperiment(m, 1);
  for (const AggregateRow& row : s.aggregate) {
    std::vector<double> acc;
    for (const auto& key : EnumerateCells(m)) {
      if (key.variant != row.variant || key.epsilon != row.epsilon) continue;
      const auto j = nlohmann::json::parse(ReadFile(dir + "/cells/" + key.Id() + ".json"));
      EXPECT_EQ(j.at("manifest_sha256"), s.manifest_hash);
      EXPECT_EQ(j.at("seed"), key.seed);
      acc.push_back(j.at("train").at("test_acc").get<double>());
    }
    const MeanStd ms = ComputeMeanStd(acc);
    EXPECT_NEAR(ms.mean, row.mean_acc, 1e-9);
    EXPECT_NEAR(ms.std, row.std_acc, 1e-9);
  }
}

TEST(RunnerTest, FailedCellIsIsolated) {
  const std::string dir = testing::TempDir("run");
  // A batch larger than the training set fails the DP cells only.
  ExperimentManifest m = ParseManifest(TinyManifest(dir));
  m.seeds = {0};
  m.privacy.batch_size = 1000;
  const RunSummary s = RunExperiment(m, 1);
  EXPECT_FALSE(s.ok());
  EXPECT_EQ(s.num_failed, 1u);
  ASSERT_EQ(s.cells.size(), 2u);
  EXPECT_TRUE(s.cells[0].ok);
  EXPECT_FALSE(s.cells[1].ok);
  EXPECT_FALSE(s.cells[1].error.empty());
}

TEST(ReportTest, EmptyDirectoryWarns) {
  const std::string dir = testing::TempDir("empty");
  const ResultsReport r = BuildReport(dir);
  EXPECT_EQ(r.num_cells, 0u);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_TRUE(r.problems.empty());
  EXPECT_EQ(ReadCsv(r.csv).size(), 1u);
}

TEST(ReportTest, SingleCellGivesOneRow) {
  const std::string dir = testing::TempDir("single");
  ExperimentManifest m = ParseManifest(TinyManifest(dir));
  m.variants = {Variant::kNonDp};
  m.seeds = {3};
  RunExperiment(m, 1);
  const ResultsReport r = WriteReport(dir);
  EXPECT_EQ(r.num_cells, 1u);
  EXPECT_TRUE(r.problems.empty());
  const auto rows = ReadCsv(r.csv);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "non_dp");
  EXPECT_TRUE(fs::exists(dir + "/report.txt"));
}

TEST(ReportTest, PowerColumnsOnlyForDpRows) {
  const std::string dir = testing::TempDir("mixed");
  ExperimentManifest m = ParseManifest(TinyManifest(dir, R"("audit": {"n_shadows": 16},)"));
  m.seeds = {0};
  const RunSummary s = RunExperiment(m, 1);
  EXPECT_EQ(s.num_failed, 0u);
  const ResultsReport r = BuildReport(dir);
  const auto rows = ReadCsv(r.csv);
  ASSERT_EQ(rows.size(), 3u);
  const auto& head = rows[0];
  size_t power_col = 0;
  for (size_t i = 0; i < head.size(); ++i) {
    if (head[i].rfind("power@", 0) == 0) {
      power_col = i;
      break;
    }
  }
  ASSERT_GT(power_col, 0u);
  EXPECT_EQ(rows[1][0], "non_dp");
  EXPECT_EQ(rows[1][power_col], "");
  EXPECT_EQ(rows[2][0], "dp");
  EXPECT_NE(rows[2][power_col], "");
  EXPECT_NE(r.text.find("supremum power"), std::string::npos);
  EXPECT_NE(r.bound_csv.find("dp,5,0,0.001,"), std::string::npos);
}

TEST(ReportTest, MissingAndCorruptCellsAreProblems) {
  const std::string dir = testing::TempDir("broken");
  ExperimentManifest m = ParseManifest(TinyManifest(dir));
  m.seeds = {0, 1};
  m.variants = {Variant::kNonDp};
  RunExperiment(m, 1);
  fs::remove(dir + "/cells/non_dp_seed1.json");
  std::ofstream(dir + "/cells/non_dp_seed0.json") << "{not json";
  const ResultsReport r = BuildReport(dir);
  EXPECT_EQ(r.problems.size(), 2u);
}

TEST(StatsTest, PopulationStd) {
  const std::vector<double> v = {1, 2, 3, 4};
  const MeanStd ms = ComputeMeanStd(v);
  EXPECT_DOUBLE_EQ(ms.mean, 2.5);
  EXPECT_DOUBLE_EQ(ms.std, std::sqrt(1.25));
}

TEST(StatsTest, AverageRanksShareTies) {
  const std::vector<double> v = {10, 20, 20, 5};
  EXPECT_EQ(AverageRanks(v), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(StatsTest, Spearman) {
  const std::vector<double> h = {0.5, 0.6, 0.7, 0.8, 0.9};
  EXPECT_DOUBLE_EQ(*Spearman(h, std::vector<double>{0.1, 0.2, 0.5, 0.6, 0.9}), 1.0);
  EXPECT_DOUBLE_EQ(*Spearman(h, std::vector<double>{5, 4, 3, 2, 1}), -1.0);
  EXPECT_NEAR(*Spearman(h, std::vector<double>{1, 3, 2, 5, 4}), 0.8, 1e-12);
  EXPECT_FALSE(Spearman(h, std::vector<double>(5, 0.7)).has_value());
  EXPECT_FALSE(Spearman(std::vector<double>{1}, std::vector<double>{2}).has_value());
}

TEST(StatsTest, FormatDoubleRoundTrips) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(5.0), "5");
  EXPECT_EQ(std::stod(FormatDouble(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(SweepTest, WritesPerHomophilyOutputs) {
  const std::string dir = testing::TempDir("sweep");
  ExperimentManifest m = ParseManifest(TinyManifest(dir));
  m.variants = {Variant::kNonDp};
  m.seeds = {0, 1};
  const SweepSummary s = SweepHomophily(m, {0.5, 0.9}, 1);
  EXPECT_TRUE(s.ok());
  EXPECT_EQ(s.rows.size(), 2u);
  EXPECT_TRUE(fs::exists(dir + "/sweep.csv"));
  EXPECT_TRUE(fs::exists(dir + "/spearman.csv"));
  EXPECT_TRUE(fs::exists(dir + "/h_0.5/aggregate.csv"));
  EXPECT_GT(s.rows[1].row.mean_acc, s.rows[0].row.mean_acc);
  // One entry per seed plus one for the means.
  EXPECT_EQ(s.spearman.size(), 3u);
}

}  // namespace
}  // namespace gnndp
