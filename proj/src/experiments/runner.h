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

#ifndef GNNDP_EXPERIMENTS_RUNNER_H_
#define GNNDP_EXPERIMENTS_RUNNER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dp/privacy_spec.h"
#include "experiments/manifest.h"
#include "gnn/trainer.h"
#include "graph/population_graph.h"
#include "mia/audit.h"

namespace gnndp {

inline constexpr int kResultSchemaVersion = 1;

struct CellKey {
  Variant variant = Variant::kNonDp;
  std::optional<double> epsilon;
  uint64_t seed = 0;

  // File-name friendly, e.g. "dp_eps5_seed0".
  std::string Id() const;
};

struct CellResult {
  CellKey key;
  bool ok = false;
  std::string error;
  std::string input_sha256;
  size_t num_nodes = 0;
  size_t num_edges = 0;
  std::optional<double> edge_homophily;
  size_t num_train = 0;
  size_t num_val = 0;
  size_t num_test = 0;
  double train_acc = 0.0;
  double val_acc = 0.0;
  double test_acc = 0.0;
  size_t best_epoch = 0;
  std::optional<double> sigma;
  std::optional<double> delta;
  std::optional<double> epsilon_spent;
  std::optional<double> rdp_order;
  size_t starved_roots = 0;
  std::vector<TrainLogRecord> log;
  std::optional<AttackReport> audit;
};

// Cells in a fixed order: seeds outermost, then variants, then epsilons.
std::vector<CellKey> EnumerateCells(const ExperimentManifest& manifest);

// The dataset for one seed, with splits assigned.
PopulationGraph BuildGraph(const ExperimentManifest& manifest, uint64_t seed);

TrainConfig CellTrainConfig(const ExperimentManifest& manifest, const CellKey& key);
std::optional<PrivacySpec> CellPrivacySpec(const ExperimentManifest& manifest,
                                           const CellKey& key);

// SHA-256 over features, labels, edges and split tags.
std::string GraphContentHash(const PopulationGraph& graph);

// Trains, evaluates and, when the manifest asks for it, audits one cell.
// Errors are captured in the result rather than thrown.
CellResult RunCell(const ExperimentManifest& manifest, const PopulationGraph& graph,
                   const CellKey& key, size_t num_threads);

std::string FormatCellJson(const CellResult& cell, const std::string& manifest_hash);

struct AggregateRow {
  Variant variant = Variant::kNonDp;
  std::optional<double> epsilon;
  size_t num_seeds = 0;
  size_t num_failed = 0;
  double mean_acc = 0.0;
  double std_acc = 0.0;
};

// Mean and population std of test accuracy over the successful seeds of each
// (variant, epsilon) group, in manifest order.
std::vector<AggregateRow> Aggregate(const ExperimentManifest& manifest,
                                    const std::vector<CellResult>& cells);
std::string FormatAggregateCsv(const std::vector<AggregateRow>& rows,
                               const std::string& manifest_hash);

struct RunSummary {
  std::string manifest_hash;
  std::vector<CellResult> cells;
  std::vector<AggregateRow> aggregate;
  size_t num_failed = 0;
  size_t num_unsound = 0;

  bool ok() const { return num_failed == 0 && num_unsound == 0; }
};

// Runs every cell and writes under manifest.output_dir:
//   manifest.json, aggregate.csv, cells/<id>.json, cells/<id>.log.jsonl and,
//   for audited cells, roc/<id>.csv.
// Cells run on a pool of num_threads workers (0: all cores).
RunSummary RunExperiment(const ExperimentManifest& manifest, size_t num_threads);

struct SweepRow {
  double homophily = 0.0;
  AggregateRow row;
};

struct SpearmanEntry {
  Variant variant = Variant::kNonDp;
  std::optional<double> epsilon;
  // Empty for the correlation of the seed means.
  std::optional<uint64_t> seed;
  std::optional<double> rho;
};

struct SweepSummary {
  std::vector<SweepRow> rows;
  std::vector<SpearmanEntry> spearman;
  size_t num_failed = 0;
  size_t num_unsound = 0;

  bool ok() const { return num_failed == 0 && num_unsound == 0; }
};

// Runs the synthetic manifest once per homophily value into
// <output_dir>/h_<h>/ and writes <output_dir>/sweep.csv
// (h,variant,epsilon,mean_acc,std_acc) and <output_dir>/spearman.csv.
SweepSummary SweepHomophily(const ExperimentManifest& manifest,
                            const std::vector<double>& homophily, size_t num_threads);

}  // namespace gnndp

#endif  // GNNDP_EXPERIMENTS_RUNNER_H_
