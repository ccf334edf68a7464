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

#include "experiments/runner.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>

#include "common/error.h"
#include "common/file_util.h"
#include "common/parallel.h"
#include "experiments/stats.h"
#include "graph/csv_io.h"
#include "graph/graph_io.h"
#include "graph/homophily.h"
#include "graph/knn.h"
#include "graph/splits.h"
#include "graph/synthetic.h"
#include "json.hpp"
#include "mia/audit.h"

namespace gnndp {
namespace {

using nlohmann::ordered_json;

bool Audited(const ExperimentManifest& manifest, Variant variant) {
  if (!manifest.audit) return false;
  const auto& only = manifest.audit->variants;
  return only.empty() || std::find(only.begin(), only.end(), variant) != only.end();
}

std::string JoinPath(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

void AppendBytes(std::string& out, const void* data, size_t size) {
  out.append(static_cast<const char*>(data), size);
}

std::string EpsilonText(const std::optional<double>& epsilon) {
  return epsilon ? FormatDouble(*epsilon) : "";
}

}  // namespace

std::string CellKey::Id() const {
  std::string id = VariantName(variant);
  if (epsilon) id += "_eps" + FormatDouble(*epsilon);
  return id + "_seed" + std::to_string(seed);
}

std::vector<CellKey> EnumerateCells(const ExperimentManifest& manifest) {
  std::vector<CellKey> cells;
  for (uint64_t seed : manifest.seeds) {
    for (Variant v : manifest.variants) {
      if (v == Variant::kDp) {
        for (double eps : manifest.privacy.epsilons) cells.push_back({v, eps, seed});
      } else {
        cells.push_back({v, std::nullopt, seed});
      }
    }
  }
  return cells;
}

PopulationGraph BuildGraph(const ExperimentManifest& manifest, uint64_t seed) {
  PopulationGraph graph;
  if (manifest.synthetic) {
    SyntheticSpec spec = *manifest.synthetic;
    spec.seed = seed;
    graph = GenerateSynthetic(spec);
  } else {
    const CsvSource& csv = *manifest.csv;
    graph = LoadCsv(csv.features_path, csv.labels_path, csv.options);
    if (csv.edges_path.empty()) {
      graph = BuildKnnGraph(graph, manifest.graph.k, manifest.graph.metric);
    } else {
      graph = ImportEdges(graph, csv.edges_path);
    }
  }
  SplitSpec split = manifest.split;
  split.seed = seed;
  return AssignSplits(graph, split);
}

TrainConfig CellTrainConfig(const ExperimentManifest& manifest, const CellKey& key) {
  TrainConfig config = manifest.model;
  config.seed = key.seed;
  config.steps = manifest.privacy.steps;
  config.batch_size = manifest.privacy.batch_size;
  config.clip_norm = manifest.privacy.clip_norm;
  config.max_degree = manifest.privacy.max_degree;
  config.occurrence_bound = manifest.privacy.occurrence_bound;
  config.model = ModelKind::kGcn;
  config.mode = TrainMode::kFullGraph;
  config.clipping = false;
  config.noise = false;
  switch (key.variant) {
    case Variant::kNonDp:
      break;
    case Variant::kClipping:
      config.clipping = true;
      break;
    case Variant::kSubgraphing:
      config.mode = TrainMode::kSubgraphBatch;
      break;
    case Variant::kSubgraphingClipping:
      config.mode = TrainMode::kSubgraphBatch;
      config.clipping = true;
      break;
    case Variant::kDp:
      config.mode = TrainMode::kSubgraphBatch;
      config.clipping = true;
      config.noise = true;
      break;
    case Variant::kMlp:
      config.model = ModelKind::kMlp;
      break;
  }
  return config;
}

std::optional<PrivacySpec> CellPrivacySpec(const ExperimentManifest& manifest,
                                           const CellKey& key) {
  if (key.variant != Variant::kDp) return std::nullopt;
  Require(key.epsilon.has_value(), "dp cell without epsilon");
  PrivacySpec spec;
  spec.epsilon_target = *key.epsilon;
  spec.delta = manifest.privacy.delta;
  spec.clip_norm = manifest.privacy.clip_norm;
  spec.max_degree = manifest.privacy.max_degree;
  spec.occurrence_bound = manifest.privacy.occurrence_bound;
  spec.batch_size = manifest.privacy.batch_size;
  spec.total_steps = manifest.privacy.steps;
  return spec;
}

std::string GraphContentHash(const PopulationGraph& graph) {
  std::string bytes;
  const uint64_t dims[2] = {graph.num_nodes(), graph.feat_dim()};
  AppendBytes(bytes, dims, sizeof(dims));
  AppendBytes(bytes, graph.features().data(), graph.features().size_bytes());
  AppendBytes(bytes, graph.labels().data(), graph.labels().size_bytes());
  for (const auto& [u, v] : graph.EdgeList()) {
    const uint32_t e[2] = {u, v};
    AppendBytes(bytes, e, sizeof(e));
  }
  for (SplitTag t : graph.splits()) bytes.push_back(static_cast<char>(t));
  return Sha256Hex(bytes);
}

CellResult RunCell(const ExperimentManifest& manifest, const PopulationGraph& graph,
                   const CellKey& key, size_t num_threads) {
  CellResult cell;
  cell.key = key;
  try {
    const GraphStats stats = ComputeGraphStats(graph);
    cell.input_sha256 = GraphContentHash(graph);
    cell.num_nodes = stats.num_nodes;
    cell.num_edges = stats.num_edges;
    cell.edge_homophily = stats.edge_homophily;
    cell.num_train = stats.num_train;
    cell.num_val = stats.num_val;
    cell.num_test = stats.num_test;

    const TrainConfig config = CellTrainConfig(manifest, key);
    const std::optional<PrivacySpec> dp = CellPrivacySpec(manifest, key);
    TrainResult trained = Train(graph, config, dp ? &*dp : nullptr);
    cell.train_acc = Evaluate(graph, trained.params, SplitTag::kTrain);
    if (stats.num_val > 0) cell.val_acc = Evaluate(graph, trained.params, SplitTag::kVal);
    cell.test_acc = Evaluate(graph, trained.params, SplitTag::kTest);
    cell.best_epoch = trained.best_epoch;
    cell.sigma = trained.sigma;
    cell.delta = trained.delta;
    cell.epsilon_spent = trained.epsilon_spent;
    cell.rdp_order = trained.rdp_order;
    cell.starved_roots = trained.starved_roots;
    cell.log = std::move(trained.log);

    if (Audited(manifest, key.variant)) {
      AuditTarget target;
      target.params = trained.params;
      target.epsilon = key.epsilon;
      target.delta = trained.delta;
      target.sigma = trained.sigma;
      AuditOptions options;
      options.num_shadows = manifest.audit->num_shadows;
      options.seed = key.seed;
      options.num_threads = num_threads;
      options.fpr_grid = manifest.audit->fpr_grid;
      options.bound = manifest.audit->bound;
      options.model_variant = VariantName(key.variant);
      cell.audit = Audit(graph, target, config, dp ? &*dp : nullptr, options);
    }
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  return cell;
}

std::string FormatCellJson(const CellResult& cell, const std::string& manifest_hash) {
  ordered_json j;
  j["schema_version"] = kResultSchemaVersion;
  j["manifest_sha256"] = manifest_hash;
  j["cell"] = cell.key.Id();
  j["variant"] = VariantName(cell.key.variant);
  j["epsilon"] = cell.key.epsilon ? ordered_json(*cell.key.epsilon) : ordered_json();
  j["seed"] = cell.key.seed;
  j["status"] = cell.ok ? "ok" : "failed";
  if (!cell.ok) {
    j["error"] = cell.error;
    return j.dump(2) + "\n";
  }
  j["input_sha256"] = cell.input_sha256;
  j["graph"] = {{"num_nodes", cell.num_nodes},
                {"num_edges", cell.num_edges},
                {"edge_homophily", cell.edge_homophily ? ordered_json(*cell.edge_homophily)
                                                       : ordered_json()},
                {"num_train", cell.num_train},
                {"num_val", cell.num_val},
                {"num_test", cell.num_test}};
  ordered_json train = {{"train_acc", cell.train_acc},
                        {"val_acc", cell.val_acc},
                        {"test_acc", cell.test_acc},
                        {"best_epoch", cell.best_epoch}};
  if (cell.sigma) train["sigma"] = *cell.sigma;
  if (cell.delta) train["delta"] = *cell.delta;
  if (cell.epsilon_spent) train["epsilon_spent"] = *cell.epsilon_spent;
  if (cell.rdp_order) train["rdp_order"] = *cell.rdp_order;
  if (cell.key.variant != Variant::kNonDp && cell.key.variant != Variant::kClipping &&
      cell.key.variant != Variant::kMlp) {
    train["starved_roots"] = cell.starved_roots;
  }
  j["train"] = train;
  j["audit"] = cell.audit ? ordered_json::parse(FormatReportJson(*cell.audit)) : ordered_json();
  return j.dump(2) + "\n";
}

std::vector<AggregateRow> Aggregate(const ExperimentManifest& manifest,
                                    const std::vector<CellResult>& cells) {
  std::vector<AggregateRow> rows;
  for (Variant v : manifest.variants) {
    std::vector<std::optional<double>> groups;
    if (v == Variant::kDp) {
      for (double e : manifest.privacy.epsilons) groups.push_back(e);
    } else {
      groups.push_back(std::nullopt);
    }
    for (const auto& eps : groups) {
      AggregateRow row;
      row.variant = v;
      row.epsilon = eps;
      std::vector<double> acc;
      for (const auto& c : cells) {
        if (c.key.variant != v || c.key.epsilon != eps) continue;
        if (c.ok) {
          acc.push_back(c.test_acc);
        } else {
          ++row.num_failed;
        }
      }
      row.num_seeds = acc.size();
      if (!acc.empty()) {
        const MeanStd ms = ComputeMeanStd(acc);
        row.mean_acc = ms.mean;
        row.std_acc = ms.std;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string FormatAggregateCsv(const std::vector<AggregateRow>& rows,
                               const std::string& manifest_hash) {
  std::ostringstream out;
  out << "variant,epsilon,seeds,failed,mean_acc,std_acc,summary,manifest_sha256\n";
  for (const auto& r : rows) {
    char summary[64] = "";
    if (r.num_seeds > 0) {
      std::snprintf(summary, sizeof(summary), "%.2f +- %.2f", 100.0 * r.mean_acc,
                    100.0 * r.std_acc);
    }
    out << VariantName(r.variant) << ',' << EpsilonText(r.epsilon) << ',' << r.num_seeds
        << ',' << r.num_failed << ',';
    if (r.num_seeds > 0) out << FormatDouble(r.mean_acc) << ',' << FormatDouble(r.std_acc);
    else out << ',';
    out << ',' << summary << ',' << manifest_hash << '\n';
  }
  return out.str();
}

RunSummary RunExperiment(const ExperimentManifest& manifest, size_t num_threads) {
  manifest.Validate();
  RunSummary summary;
  summary.manifest_hash = ManifestHash(manifest);
  const std::string& dir = manifest.output_dir;
  WriteFileAtomic(JoinPath(dir, "manifest.json"), SerializeManifest(manifest));

  // One graph per seed, shared read-only by that seed's cells.
  const size_t threads = ResolveThreads(num_threads);
  std::vector<std::unique_ptr<PopulationGraph>> graphs(manifest.seeds.size());
  std::vector<std::string> graph_errors(manifest.seeds.size());
  ParallelFor(manifest.seeds.size(), threads, [&](size_t i) {
    try {
      graphs[i] = std::make_unique<PopulationGraph>(BuildGraph(manifest, manifest.seeds[i]));
    } catch (const std::exception& e) {
      graph_errors[i] = e.what();
    }
  });
  std::map<uint64_t, size_t> seed_index;
  for (size_t i = 0; i < manifest.seeds.size(); ++i) seed_index[manifest.seeds[i]] = i;

  const std::vector<CellKey> keys = EnumerateCells(manifest);
  const size_t cell_threads = std::min(threads, keys.size());
  const size_t inner_threads = std::max<size_t>(1, threads / std::max<size_t>(1, cell_threads));
  summary.cells.resize(keys.size());
  ParallelFor(keys.size(), cell_threads, [&](size_t i) {
    const size_t g = seed_index.at(keys[i].seed);
    CellResult cell;
    if (graphs[g]) {
      cell = RunCell(manifest, *graphs[g], keys[i], inner_threads);
    } else {
      cell.key = keys[i];
      cell.error = "dataset: " + graph_errors[g];
    }
    const std::string id = cell.key.Id();
    WriteFileAtomic(JoinPath(dir, "cells/" + id + ".json"),
                    FormatCellJson(cell, summary.manifest_hash));
    if (cell.ok) {
      WriteFileAtomic(JoinPath(dir, "cells/" + id + ".log.jsonl"), FormatTrainLog(cell.log));
    }
    if (cell.audit) {
      WriteFileAtomic(JoinPath(dir, "roc/" + id + ".csv"), FormatRocCsv(cell.audit->roc));
    }
    summary.cells[i] = std::move(cell);
  });

  for (const auto& c : summary.cells) {
    if (!c.ok) ++summary.num_failed;
    if (c.audit && !c.audit->Sound()) ++summary.num_unsound;
  }
  summary.aggregate = Aggregate(manifest, summary.cells);
  WriteFileAtomic(JoinPath(dir, "aggregate.csv"),
                  FormatAggregateCsv(summary.aggregate, summary.manifest_hash));
  return summary;
}

SweepSummary SweepHomophily(const ExperimentManifest& manifest,
                            const std::vector<double>& homophily, size_t num_threads) {
  Require(manifest.synthetic.has_value(), "homophily sweep needs a synthetic dataset");
  Require(!homophily.empty(), "homophily sweep needs at least one value");
  SweepSummary sweep;
  // accuracy[group][seed index][h index]
  std::map<std::pair<int, double>, std::vector<std::vector<std::optional<double>>>> acc;
  auto group_key = [](const CellKey& k) {
    return std::make_pair(static_cast<int>(k.variant), k.epsilon.value_or(-1.0));
  };
  for (size_t hi = 0; hi < homophily.size(); ++hi) {
    ExperimentManifest m = manifest;
    m.synthetic->target_homophily = homophily[hi];
    m.output_dir = JoinPath(manifest.output_dir, "h_" + FormatDouble(homophily[hi]));
    RunSummary run = RunExperiment(m, num_threads);
    sweep.num_failed += run.num_failed;
    sweep.num_unsound += run.num_unsound;
    for (const auto& row : run.aggregate) sweep.rows.push_back({homophily[hi], row});
    for (const auto& c : run.cells) {
      auto& per_seed = acc[group_key(c.key)];
      per_seed.resize(manifest.seeds.size(),
                      std::vector<std::optional<double>>(homophily.size()));
      const size_t si = static_cast<size_t>(
          std::find(manifest.seeds.begin(), manifest.seeds.end(), c.key.seed) -
          manifest.seeds.begin());
      if (c.ok) per_seed[si][hi] = c.test_acc;
    }
  }

  std::ostringstream csv;
  csv << "h,variant,epsilon,mean_acc,std_acc\n";
  for (const auto& r : sweep.rows) {
    csv << FormatDouble(r.homophily) << ',' << VariantName(r.row.variant) << ','
        << EpsilonText(r.row.epsilon) << ',';
    if (r.row.num_seeds > 0) {
      csv << FormatDouble(r.row.mean_acc) << ',' << FormatDouble(r.row.std_acc);
    } else {
      csv << ',';
    }
    csv << '\n';
  }
  WriteFileAtomic(JoinPath(manifest.output_dir, "sweep.csv"), csv.str());

  // Spearman between h and accuracy per seed, then on the seed means.
  for (const auto& key : EnumerateCells(manifest)) {
    if (key.seed != manifest.seeds.front()) continue;
    const auto& per_seed = acc[group_key(key)];
    std::vector<double> mean_h, mean_acc;
    for (size_t si = 0; si < manifest.seeds.size(); ++si) {
      std::vector<double> hs, ys;
      for (size_t hi = 0; hi < homophily.size(); ++hi) {
        if (per_seed[si][hi]) {
          hs.push_back(homophily[hi]);
          ys.push_back(*per_seed[si][hi]);
        }
      }
      sweep.spearman.push_back({key.variant, key.epsilon, manifest.seeds[si], Spearman(hs, ys)});
    }
    for (const auto& r : sweep.rows) {
      if (r.row.variant == key.variant && r.row.epsilon == key.epsilon && r.row.num_seeds > 0) {
        mean_h.push_back(r.homophily);
        mean_acc.push_back(r.row.mean_acc);
      }
    }
    sweep.spearman.push_back({key.variant, key.epsilon, std::nullopt, Spearman(mean_h, mean_acc)});
  }
  std::ostringstream sp;
  sp << "variant,epsilon,seed,spearman\n";
  for (const auto& e : sweep.spearman) {
    sp << VariantName(e.variant) << ',' << EpsilonText(e.epsilon) << ','
       << (e.seed ? std::to_string(*e.seed) : "mean") << ','
       << (e.rho ? FormatDouble(*e.rho) : "") << '\n';
  }
  WriteFileAtomic(JoinPath(manifest.output_dir, "spearman.csv"), sp.str());
  return sweep;
}

}  // namespace gnndp
