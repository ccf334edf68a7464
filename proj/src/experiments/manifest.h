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

#ifndef GNNDP_EXPERIMENTS_MANIFEST_H_
#define GNNDP_EXPERIMENTS_MANIFEST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dp/supremum_power.h"
#include "gnn/trainer.h"
#include "graph/csv_io.h"
#include "graph/knn.h"
#include "graph/splits.h"
#include "graph/synthetic.h"

namespace gnndp {

inline constexpr int kManifestSchemaVersion = 1;

enum class Variant {
  kNonDp,
  kClipping,
  kSubgraphing,
  kSubgraphingClipping,
  kDp,
  kMlp,
};

const char* VariantName(Variant variant);
Variant ParseVariant(const std::string& name);

struct CsvSource {
  std::string features_path;
  std::string labels_path;
  // Optional edge list; when empty the graph is built by k-NN.
  std::string edges_path;
  CsvOptions options;
};

struct GraphBlock {
  size_t k = 5;
  KnnMetric metric = KnnMetric::kEuclidean;
};

// Mechanism parameters shared by every sub-graphing and clipping variant;
// epsilons only apply to the dp variant.
struct PrivacyBlock {
  std::vector<double> epsilons;
  double delta = 0.0;  // <= 0: recommended delta
  double clip_norm = 1.0;
  size_t max_degree = 5;
  size_t occurrence_bound = 0;
  size_t batch_size = 64;
  size_t steps = 1000;
};

struct AuditBlock {
  size_t num_shadows = 128;
  std::vector<double> fpr_grid = {0.001, 0.005, 0.01};
  PowerBound bound = PowerBound::kOneSided;
  // Empty means every variant is audited.
  std::vector<Variant> variants;
};

// One experiment grid. Every cell is (variant, epsilon for dp, seed); the seed
// drives the synthetic generator, the split and training alike.
struct ExperimentManifest {
  std::optional<SyntheticSpec> synthetic;
  std::optional<CsvSource> csv;
  GraphBlock graph;
  SplitSpec split;
  TrainConfig model;
  std::vector<Variant> variants;
  PrivacyBlock privacy;
  bool has_privacy = false;
  std::optional<AuditBlock> audit;
  std::vector<uint64_t> seeds;
  std::string output_dir;

  void Validate() const;
};

ExperimentManifest ParseManifest(const std::string& json_text);
ExperimentManifest LoadManifest(const std::string& path);
// Canonical JSON; parsing it back yields an equal manifest.
std::string SerializeManifest(const ExperimentManifest& manifest);
// SHA-256 of the canonical JSON with output_dir left out, so relocating a
// run keeps its hash.
std::string ManifestHash(const ExperimentManifest& manifest);

}  // namespace gnndp

#endif  // GNNDP_EXPERIMENTS_MANIFEST_H_
