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

#include "gnndp/gnndp.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

std::string Scratch(const std::string& name) {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  fs::path p = fs::temp_directory_path() / "gnndp_tests" / "capi" / info->name() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

std::string Take(char* s) {
  std::string out = s ? s : "";
  gnndp_string_free(s);
  return out;
}

gnndp_graph* SplitGraph(size_t n, double h, uint64_t seed) {
  gnndp_synthetic_spec spec;
  gnndp_synthetic_spec_default(&spec);
  spec.num_nodes = n;
  spec.homophily = h;
  spec.seed = seed;
  gnndp_graph* raw = nullptr;
  EXPECT_EQ(gnndp_graph_generate_synthetic(&spec, &raw), GNNDP_OK);
  gnndp_graph* split = nullptr;
  EXPECT_EQ(gnndp_graph_assign_splits(raw, 0.56, 0.14, 0.30, seed, &split), GNNDP_OK);
  gnndp_graph_free(raw);
  return split;
}

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_NE(std::string(gnndp_version()), "");
  EXPECT_STREQ(gnndp_status_name(GNNDP_OK), "ok");
  EXPECT_STREQ(gnndp_status_name(GNNDP_ERR_CALIBRATION), "calibration_error");
}

TEST(CApiTest, NullArgumentsReportInvalidArgument) {
  gnndp_graph* g = nullptr;
  EXPECT_EQ(gnndp_graph_generate_synthetic(nullptr, &g), GNNDP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(g, nullptr);
  EXPECT_NE(std::string(gnndp_last_error()), "");
  gnndp_graph_free(nullptr);
  gnndp_model_free(nullptr);
  gnndp_string_free(nullptr);
}

TEST(CApiTest, ErrorCodesMapThrough) {
  gnndp_graph* g = nullptr;
  EXPECT_EQ(gnndp_graph_load_csv("/nonexistent/x.csv", "/nonexistent/y.csv", 1, 0, &g),
            GNNDP_ERR_IO);
  double power = 0.0;
  EXPECT_EQ(gnndp_supremum_power(5.0, 1e-4, 2.0, 0, &power), GNNDP_ERR_INVALID_ARGUMENT);
  double sigma, spent, order;
  EXPECT_EQ(gnndp_calibrate_sigma(1e-3, 1e-5, 100, 11, 100, 100000, &sigma, &spent, &order),
            GNNDP_ERR_CALIBRATION);
  EXPECT_NE(std::string(gnndp_last_error()).find("unreachable"), std::string::npos);

  gnndp_synthetic_spec spec;
  gnndp_synthetic_spec_default(&spec);
  spec.num_nodes = 20;
  spec.neighbors_per_node = 2;
  gnndp_graph* raw = nullptr;
  ASSERT_EQ(gnndp_graph_generate_synthetic(&spec, &raw), GNNDP_OK);
  gnndp_graph* knn = nullptr;
  EXPECT_EQ(gnndp_graph_build_knn(raw, 20, "euclidean", 1, &knn), GNNDP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(gnndp_graph_build_knn(raw, 2, "hamming", 1, &knn), GNNDP_ERR_INVALID_ARGUMENT);
  gnndp_graph_free(raw);
}

TEST(CApiTest, GraphStats) {
  gnndp_graph* g = SplitGraph(1000, 0.9, 0);
  gnndp_graph_stats s;
  ASSERT_EQ(gnndp_graph_get_stats(g, &s), GNNDP_OK);
  EXPECT_EQ(s.num_nodes, 1000u);
  EXPECT_EQ(s.num_classes, 2);
  EXPECT_GE(s.edge_homophily, 0.88);
  EXPECT_LE(s.edge_homophily, 0.92);
  EXPECT_EQ(s.num_train, 560u);
  EXPECT_NEAR(s.recommended_delta, 1.79e-4, 1e-6);
  char* json = nullptr;
  ASSERT_EQ(gnndp_graph_stats_json(g, &json), GNNDP_OK);
  EXPECT_NE(Take(json).find("\"homophily\""), std::string::npos);
  gnndp_graph_free(g);
}

TEST(CApiTest, EdgelessStatsAreNaN) {
  const std::string dir = Scratch("csv");
  std::ofstream(dir + "/x.csv") << "0,1\n1,0\n2,2\n";
  std::ofstream(dir + "/y.csv") << "0\n1\n1\n";
  gnndp_graph* g = nullptr;
  ASSERT_EQ(gnndp_graph_load_csv((dir + "/x.csv").c_str(), (dir + "/y.csv").c_str(), 1, 0, &g),
            GNNDP_OK);
  gnndp_graph_stats s;
  ASSERT_EQ(gnndp_graph_get_stats(g, &s), GNNDP_OK);
  EXPECT_EQ(s.num_edges, 0u);
  EXPECT_TRUE(std::isnan(s.edge_homophily));
  EXPECT_TRUE(std::isnan(s.recommended_delta));
  gnndp_graph* knn = nullptr;
  ASSERT_EQ(gnndp_graph_build_knn(g, 1, "euclidean", 0, &knn), GNNDP_OK);
  ASSERT_EQ(gnndp_graph_get_stats(knn, &s), GNNDP_OK);
  EXPECT_GT(s.num_edges, 0u);
  gnndp_graph_free(knn);
  gnndp_graph_free(g);
}

TEST(CApiTest, TrainEvaluateSaveLoad) {
  gnndp_graph* g = SplitGraph(400, 0.9, 1);
  gnndp_train_config c;
  gnndp_train_config_default(&c);
  c.epochs = 100;
  gnndp_model* m = nullptr;
  ASSERT_EQ(gnndp_model_train(g, &c, nullptr, &m), GNNDP_OK) << gnndp_last_error();
  double acc = 0.0;
  ASSERT_EQ(gnndp_model_evaluate(m, g, "test", &acc), GNNDP_OK);
  EXPECT_GE(acc, 0.9);
  EXPECT_EQ(gnndp_model_evaluate(m, g, "holdout", &acc), GNNDP_ERR_INVALID_ARGUMENT);

  char* log = nullptr;
  ASSERT_EQ(gnndp_model_train_log(m, &log), GNNDP_OK);
  EXPECT_NE(Take(log).find("\"val_acc\""), std::string::npos);

  const std::string dir = Scratch("model");
  ASSERT_EQ(gnndp_model_save(m, (dir + "/m.bin").c_str()), GNNDP_OK);
  gnndp_model* back = nullptr;
  ASSERT_EQ(gnndp_model_load((dir + "/m.bin").c_str(), &back), GNNDP_OK);
  double acc2 = 0.0;
  ASSERT_EQ(gnndp_model_evaluate(back, g, "test", &acc2), GNNDP_OK);
  EXPECT_EQ(acc, acc2);
  gnndp_model_free(back);
  gnndp_model_free(m);
  gnndp_graph_free(g);
}

TEST(CApiTest, DpTrainingReportsBudget) {
  gnndp_graph* g = SplitGraph(300, 0.9, 2);
  gnndp_train_config c;
  gnndp_train_config_default(&c);
  c.mode = "subgraph_batch";
  c.clipping = 1;
  c.noise = 1;
  gnndp_privacy_spec p;
  gnndp_privacy_spec_default(&p);
  p.epsilon = 5.0;
  p.total_steps = 30;
  p.batch_size = 32;
  gnndp_model* m = nullptr;
  ASSERT_EQ(gnndp_model_train(g, &c, &p, &m), GNNDP_OK) << gnndp_last_error();
  char* info = nullptr;
  ASSERT_EQ(gnndp_model_info_json(m, &info), GNNDP_OK);
  const std::string j = Take(info);
  EXPECT_NE(j.find("\"sigma\""), std::string::npos);
  EXPECT_NE(j.find("\"epsilon_spent\""), std::string::npos);
  gnndp_model_free(m);

  c.noise = 0;
  EXPECT_EQ(gnndp_model_train(g, &c, &p, &m), GNNDP_ERR_INVALID_ARGUMENT);
  gnndp_graph_free(g);
}

TEST(CApiTest, Accounting) {
  double sigma = 0, spent = 0, order = 0;
  ASSERT_EQ(gnndp_calibrate_sigma(5.0, 1.79e-4, 560, 6, 64, 1000, &sigma, &spent, &order),
            GNNDP_OK);
  EXPECT_NEAR(sigma, 30.939332034067185, 1e-4);
  EXPECT_LE(spent, 5.0);
  double eps = -1, ord = 0;
  ASSERT_EQ(gnndp_accountant_epsilon(sigma, 560, 6, 64, 1000, 1.79e-4, &eps, &ord), GNNDP_OK);
  EXPECT_DOUBLE_EQ(eps, spent);
  ASSERT_EQ(gnndp_accountant_epsilon(sigma, 560, 6, 64, 0, 1.79e-4, &eps, &ord), GNNDP_OK);
  EXPECT_EQ(eps, 0.0);
  EXPECT_TRUE(std::isnan(ord));
  double p = 0;
  ASSERT_EQ(gnndp_supremum_power(5.0, 1.31e-4, 0.005, 0, &p), GNNDP_OK);
  EXPECT_NEAR(p, 0.7422, 5e-5);
  double d = 0;
  ASSERT_EQ(gnndp_recommend_delta(1, &d), GNNDP_OK);
  EXPECT_DOUBLE_EQ(d, 0.1);
}

TEST(CApiTest, AuditSmallEnsemble) {
  gnndp_graph* g = SplitGraph(200, 0.8, 3);
  gnndp_train_config c;
  gnndp_train_config_default(&c);
  c.epochs = 30;
  gnndp_model* m = nullptr;
  ASSERT_EQ(gnndp_model_train(g, &c, nullptr, &m), GNNDP_OK);
  gnndp_audit_options o;
  gnndp_audit_options_default(&o);
  o.num_shadows = 16;
  char* report = nullptr;
  char* roc = nullptr;
  int sound = 0;
  ASSERT_EQ(gnndp_audit(g, m, &c, nullptr, &o, &report, &roc, &sound), GNNDP_OK)
      << gnndp_last_error();
  EXPECT_EQ(sound, 1);
  EXPECT_NE(Take(report).find("\"auc\""), std::string::npos);
  EXPECT_EQ(Take(roc).rfind("fpr,tpr\n", 0), 0u);
  o.num_shadows = 8;
  EXPECT_EQ(gnndp_audit(g, m, &c, nullptr, &o, &report, nullptr, &sound),
            GNNDP_ERR_AUDIT_SETUP);
  gnndp_model_free(m);
  gnndp_graph_free(g);
}

TEST(CApiTest, RunManifestAndReport) {
  const std::string dir = Scratch("run");
  const std::string path = dir + "/m.json";
  std::ofstream(path) << R"({"schema_version": 1,
    "dataset": {"synthetic": {"num_nodes": 100, "homophily": 0.8, "neighbors_per_node": 3}},
    "model": {"epochs": 10}, "variants": ["non_dp", "mlp"], "seeds": [0, 1],
    "output_dir": "unused"})";
  char* summary = nullptr;
  int all_ok = 0;
  ASSERT_EQ(gnndp_run_manifest(path.c_str(), (dir + "/out").c_str(), 1, &summary, &all_ok),
            GNNDP_OK)
      << gnndp_last_error();
  EXPECT_EQ(all_ok, 1);
  EXPECT_NE(Take(summary).find("manifest_sha256"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir + "/out/aggregate.csv"));
  char* text = nullptr;
  size_t problems = 99;
  ASSERT_EQ(gnndp_report((dir + "/out").c_str(), &text, &problems), GNNDP_OK);
  EXPECT_EQ(problems, 0u);
  EXPECT_NE(Take(text).find("mlp"), std::string::npos);

  std::ofstream(path) << "{\"schema_version\": 1, \"bogus\": 0}";
  EXPECT_EQ(gnndp_run_manifest(path.c_str(), nullptr, 1, &summary, &all_ok), GNNDP_ERR_PARSE);
}

}  // namespace
