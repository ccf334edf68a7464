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

#include "experiments/manifest.h"

#include <algorithm>
#include <initializer_list>
#include <set>

#include "common/error.h"
#include "common/file_util.h"
#include "json.hpp"
#include "mia/shadow.h"

namespace gnndp {
namespace {

using nlohmann::json;

void CheckKeys(const json& obj, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) Fail(ErrorCode::kParse, where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* a) { return key == a; });
    if (!known) Fail(ErrorCode::kParse, "unknown key in " + where + ": " + key);
  }
}

template <typename T>
void Read(const json& obj, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("bad value for ") + key + ": " + e.what());
  }
}

SyntheticSpec ParseSynthetic(const json& j) {
  CheckKeys(j, "dataset.synthetic",
            {"num_nodes", "homophily", "neighbors_per_node", "feat_dim",
             "class_separation", "noise_std"});
  SyntheticSpec s;
  Read(j, "num_nodes", s.num_nodes);
  Read(j, "homophily", s.target_homophily);
  Read(j, "neighbors_per_node", s.neighbors_per_node);
  Read(j, "feat_dim", s.feat_dim);
  Read(j, "class_separation", s.class_separation);
  Read(j, "noise_std", s.feature_noise_std);
  return s;
}

CsvSource ParseCsvSource(const json& j) {
  CheckKeys(j, "dataset.csv", {"features", "labels", "edges", "standardize", "skip_header"});
  CsvSource c;
  Read(j, "features", c.features_path);
  Read(j, "labels", c.labels_path);
  Read(j, "edges", c.edges_path);
  Read(j, "standardize", c.options.standardize);
  Read(j, "skip_header", c.options.skip_header);
  if (c.features_path.empty() || c.labels_path.empty()) {
    Fail(ErrorCode::kParse, "dataset.csv needs features and labels paths");
  }
  return c;
}

TrainConfig ParseModel(const json& j) {
  CheckKeys(j, "model",
            {"layers", "hidden", "learning_rate", "optimizer", "momentum", "epochs"});
  TrainConfig c;
  Read(j, "layers", c.num_layers);
  Read(j, "hidden", c.hidden_dim);
  Read(j, "learning_rate", c.learning_rate);
  Read(j, "momentum", c.momentum);
  Read(j, "epochs", c.epochs);
  std::string optimizer = OptimizerName(c.optimizer);
  Read(j, "optimizer", optimizer);
  c.optimizer = ParseOptimizer(optimizer);
  return c;
}

PrivacyBlock ParsePrivacy(const json& j) {
  CheckKeys(j, "privacy",
            {"epsilons", "delta", "clip_norm", "max_degree", "occurrence_bound",
             "batch_size", "steps"});
  PrivacyBlock p;
  Read(j, "epsilons", p.epsilons);
  Read(j, "delta", p.delta);
  Read(j, "clip_norm", p.clip_norm);
  Read(j, "max_degree", p.max_degree);
  Read(j, "occurrence_bound", p.occurrence_bound);
  Read(j, "batch_size", p.batch_size);
  Read(j, "steps", p.steps);
  return p;
}

std::vector<Variant> ParseVariants(const json& j, const char* where) {
  if (!j.is_array()) Fail(ErrorCode::kParse, std::string(where) + " must be an array");
  std::vector<Variant> out;
  for (const auto& v : j) {
    if (!v.is_string()) Fail(ErrorCode::kParse, std::string(where) + " entries are names");
    out.push_back(ParseVariant(v.get<std::string>()));
  }
  return out;
}

AuditBlock ParseAudit(const json& j) {
  CheckKeys(j, "audit", {"n_shadows", "fpr", "bound", "variants"});
  AuditBlock a;
  Read(j, "n_shadows", a.num_shadows);
  Read(j, "fpr", a.fpr_grid);
  std::string bound = PowerBoundName(a.bound);
  Read(j, "bound", bound);
  a.bound = ParsePowerBound(bound);
  if (j.contains("variants")) a.variants = ParseVariants(j["variants"], "audit.variants");
  return a;
}

json VariantsJson(const std::vector<Variant>& variants) {
  json out = json::array();
  for (Variant v : variants) out.push_back(VariantName(v));
  return out;
}

}  // namespace

const char* VariantName(Variant variant) {
  switch (variant) {
    case Variant::kNonDp: return "non_dp";
    case Variant::kClipping: return "clipping";
    case Variant::kSubgraphing: return "subgraphing";
    case Variant::kSubgraphingClipping: return "subgraphing_clipping";
    case Variant::kDp: return "dp";
    case Variant::kMlp: return "mlp";
  }
  return "unknown";
}

Variant ParseVariant(const std::string& name) {
  for (Variant v : {Variant::kNonDp, Variant::kClipping, Variant::kSubgraphing,
                    Variant::kSubgraphingClipping, Variant::kDp, Variant::kMlp}) {
    if (name == VariantName(v)) return v;
  }
  Fail(ErrorCode::kParse, "unknown variant: " + name);
}

void ExperimentManifest::Validate() const {
  Require(synthetic.has_value() != csv.has_value(),
          "manifest needs exactly one dataset source");
  if (synthetic) synthetic->Validate();
  split.Validate();
  model.Validate();
  Require(!variants.empty(), "manifest needs at least one variant");
  Require(!seeds.empty(), "manifest needs at least one seed");
  Require(!output_dir.empty(), "manifest needs an output_dir");
  std::set<uint64_t> unique_seeds(seeds.begin(), seeds.end());
  Require(unique_seeds.size() == seeds.size(), "seeds must be distinct");
  bool wants_dp = std::find(variants.begin(), variants.end(), Variant::kDp) != variants.end();
  Require(!wants_dp || has_privacy, "the dp variant needs a privacy block");
  if (has_privacy) {
    Require(!wants_dp || !privacy.epsilons.empty(), "privacy.epsilons must be nonempty");
    for (double e : privacy.epsilons) Require(e > 0.0, "epsilons must be positive");
    Require(privacy.delta < 1.0, "privacy.delta must be < 1");
    Require(privacy.clip_norm > 0.0, "privacy.clip_norm must be positive");
    Require(privacy.max_degree >= 1, "privacy.max_degree must be >= 1");
    Require(privacy.batch_size >= 1, "privacy.batch_size must be >= 1");
    Require(privacy.steps >= 1, "privacy.steps must be >= 1");
  }
  if (csv) Require(!csv->edges_path.empty() || graph.k >= 1, "graph.k must be >= 1");
  if (audit) {
    Require(audit->num_shadows >= 2 * kMinShadowCoverage, "audit.n_shadows must be >= 16");
    Require(!audit->fpr_grid.empty(), "audit.fpr must be nonempty");
    for (double f : audit->fpr_grid) Require(f >= 0.0 && f <= 1.0, "audit.fpr values lie in [0, 1]");
  }
}

ExperimentManifest ParseManifest(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("manifest is not valid JSON: ") + e.what());
  }
  CheckKeys(j, "manifest",
            {"schema_version", "dataset", "graph", "split", "model", "variants", "privacy",
             "audit", "seeds", "output_dir"});
  int version = 0;
  Read(j, "schema_version", version);
  if (version != kManifestSchemaVersion) {
    Fail(ErrorCode::kParse, "unsupported manifest schema_version " + std::to_string(version));
  }

  ExperimentManifest m;
  if (!j.contains("dataset")) Fail(ErrorCode::kParse, "manifest needs a dataset block");
  const json& dataset = j["dataset"];
  CheckKeys(dataset, "dataset", {"synthetic", "csv"});
  if (dataset.contains("synthetic")) m.synthetic = ParseSynthetic(dataset["synthetic"]);
  if (dataset.contains("csv")) m.csv = ParseCsvSource(dataset["csv"]);

  if (j.contains("graph")) {
    CheckKeys(j["graph"], "graph", {"k", "metric"});
    Read(j["graph"], "k", m.graph.k);
    std::string metric = KnnMetricName(m.graph.metric);
    Read(j["graph"], "metric", metric);
    m.graph.metric = ParseKnnMetric(metric);
  }
  if (j.contains("split")) {
    CheckKeys(j["split"], "split", {"train", "val", "test"});
    Read(j["split"], "train", m.split.train_fraction);
    Read(j["split"], "val", m.split.val_fraction);
    Read(j["split"], "test", m.split.test_fraction);
  }
  if (j.contains("model")) m.model = ParseModel(j["model"]);
  if (j.contains("variants")) m.variants = ParseVariants(j["variants"], "variants");
  if (j.contains("privacy")) {
    m.privacy = ParsePrivacy(j["privacy"]);
    m.has_privacy = true;
  }
  if (j.contains("audit")) m.audit = ParseAudit(j["audit"]);
  Read(j, "seeds", m.seeds);
  Read(j, "output_dir", m.output_dir);
  m.Validate();
  return m;
}

ExperimentManifest LoadManifest(const std::string& path) {
  return ParseManifest(ReadFile(path));
}

std::string SerializeManifest(const ExperimentManifest& m) {
  json j;
  j["schema_version"] = kManifestSchemaVersion;
  if (m.synthetic) {
    const SyntheticSpec& s = *m.synthetic;
    j["dataset"]["synthetic"] = {{"num_nodes", s.num_nodes},
                                 {"homophily", s.target_homophily},
                                 {"neighbors_per_node", s.neighbors_per_node},
                                 {"feat_dim", s.feat_dim},
                                 {"class_separation", s.class_separation},
                                 {"noise_std", s.feature_noise_std}};
  }
  if (m.csv) {
    j["dataset"]["csv"] = {{"features", m.csv->features_path},
                           {"labels", m.csv->labels_path},
                           {"edges", m.csv->edges_path},
                           {"standardize", m.csv->options.standardize},
                           {"skip_header", m.csv->options.skip_header}};
  }
  j["graph"] = {{"k", m.graph.k}, {"metric", KnnMetricName(m.graph.metric)}};
  j["split"] = {{"train", m.split.train_fraction},
                {"val", m.split.val_fraction},
                {"test", m.split.test_fraction}};
  j["model"] = {{"layers", m.model.num_layers},
                {"hidden", m.model.hidden_dim},
                {"learning_rate", m.model.learning_rate},
                {"optimizer", OptimizerName(m.model.optimizer)},
                {"momentum", m.model.momentum},
                {"epochs", m.model.epochs}};
  j["variants"] = VariantsJson(m.variants);
  if (m.has_privacy) {
    j["privacy"] = {{"epsilons", m.privacy.epsilons},
                    {"delta", m.privacy.delta},
                    {"clip_norm", m.privacy.clip_norm},
                    {"max_degree", m.privacy.max_degree},
                    {"occurrence_bound", m.privacy.occurrence_bound},
                    {"batch_size", m.privacy.batch_size},
                    {"steps", m.privacy.steps}};
  }
  if (m.audit) {
    j["audit"] = {{"n_shadows", m.audit->num_shadows},
                  {"fpr", m.audit->fpr_grid},
                  {"bound", PowerBoundName(m.audit->bound)},
                  {"variants", VariantsJson(m.audit->variants)}};
  }
  j["seeds"] = m.seeds;
  j["output_dir"] = m.output_dir;
  return j.dump(2) + "\n";
}

std::string ManifestHash(const ExperimentManifest& manifest) {
  ExperimentManifest unplaced = manifest;
  unplaced.output_dir.clear();
  return Sha256Hex(SerializeManifest(unplaced));
}

}  // namespace gnndp
