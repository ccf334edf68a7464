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
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>

#include "common/error.h"
#include "dp/accountant.h"
#include "dp/delta_policy.h"
#include "dp/supremum_power.h"
#include "experiments/manifest.h"
#include "experiments/report.h"
#include "experiments/runner.h"
#include "experiments/stats.h"
#include "gnn/model_io.h"
#include "gnn/trainer.h"
#include "graph/csv_io.h"
#include "graph/graph_io.h"
#include "graph/homophily.h"
#include "graph/knn.h"
#include "graph/splits.h"
#include "graph/synthetic.h"
#include "json.hpp"
#include "mia/audit.h"

struct gnndp_graph {
  gnndp::PopulationGraph graph;
};

struct gnndp_model {
  gnndp::TrainResult result;
  bool trained = false;
};

namespace {

using gnndp::ErrorCode;
using gnndp::Require;

thread_local std::string last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename Fn>
gnndp_status Guard(Fn&& fn) {
  try {
    fn();
    return GNNDP_OK;
  } catch (const gnndp::Error& e) {
    last_error = e.what();
    return static_cast<gnndp_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GNNDP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GNNDP_ERR_INTERNAL;
  }
}

void RequireNonNull(const void* p, const char* what) {
  Require(p != nullptr, std::string(what) + " must not be NULL");
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

gnndp::TrainConfig ToConfig(const gnndp_train_config* c) {
  RequireNonNull(c, "config");
  gnndp::TrainConfig out;
  out.model = gnndp::ParseModelKind(c->model ? c->model : "gcn");
  out.num_layers = c->num_layers;
  out.hidden_dim = c->hidden_dim;
  out.learning_rate = c->learning_rate;
  out.optimizer = gnndp::ParseOptimizer(c->optimizer ? c->optimizer : "adam");
  out.momentum = c->momentum;
  out.epochs = c->epochs;
  out.steps = c->steps;
  out.seed = c->seed;
  out.mode = gnndp::ParseTrainMode(c->mode ? c->mode : "full_graph");
  out.clipping = c->clipping != 0;
  out.clip_norm = c->clip_norm;
  out.noise = c->noise != 0;
  out.max_degree = c->max_degree;
  out.occurrence_bound = c->occurrence_bound;
  out.batch_size = c->batch_size;
  return out;
}

gnndp::PrivacySpec ToPrivacy(const gnndp_privacy_spec* p) {
  gnndp::PrivacySpec out;
  out.epsilon_target = p->epsilon;
  out.delta = p->delta;
  out.clip_norm = p->clip_norm;
  out.sigma = p->sigma;
  out.max_degree = p->max_degree;
  out.occurrence_bound = p->occurrence_bound;
  out.batch_size = p->batch_size;
  out.total_steps = p->total_steps;
  return out;
}

gnndp::SplitTag ParseSplit(const char* name) {
  RequireNonNull(name, "split");
  const std::string s = name;
  if (s == "train") return gnndp::SplitTag::kTrain;
  if (s == "val") return gnndp::SplitTag::kVal;
  if (s == "test") return gnndp::SplitTag::kTest;
  gnndp::Fail(ErrorCode::kInvalidArgument, "unknown split: " + s);
}

gnndp::ExperimentManifest LoadWithOverride(const char* manifest_path, const char* output_dir) {
  RequireNonNull(manifest_path, "manifest_path");
  gnndp::ExperimentManifest m = gnndp::LoadManifest(manifest_path);
  if (output_dir && *output_dir) m.output_dir = output_dir;
  m.Validate();
  return m;
}

}  // namespace

extern "C" {

const char* gnndp_version(void) { return "1.0.0"; }

const char* gnndp_status_name(gnndp_status status) {
  switch (status) {
    case GNNDP_OK: return "ok";
    case GNNDP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case GNNDP_ERR_PARSE: return "parse_error";
    case GNNDP_ERR_IO: return "io_error";
    case GNNDP_ERR_SHAPE: return "shape_error";
    case GNNDP_ERR_UNDEFINED_METRIC: return "undefined_metric";
    case GNNDP_ERR_CALIBRATION: return "calibration_error";
    case GNNDP_ERR_AUDIT_SETUP: return "audit_setup_error";
    case GNNDP_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* gnndp_last_error(void) { return last_error.c_str(); }

void gnndp_string_free(char* str) { std::free(str); }

void gnndp_synthetic_spec_default(gnndp_synthetic_spec* spec) {
  if (!spec) return;
  const gnndp::SyntheticSpec d;
  spec->num_nodes = d.num_nodes;
  spec->homophily = d.target_homophily;
  spec->neighbors_per_node = d.neighbors_per_node;
  spec->feat_dim = d.feat_dim;
  spec->class_separation = d.class_separation;
  spec->noise_std = d.feature_noise_std;
  spec->seed = d.seed;
}

gnndp_status gnndp_graph_generate_synthetic(const gnndp_synthetic_spec* spec,
                                            gnndp_graph** out) {
  return Guard([&] {
    RequireNonNull(spec, "spec");
    RequireNonNull(out, "out");
    gnndp::SyntheticSpec s;
    s.num_nodes = spec->num_nodes;
    s.target_homophily = spec->homophily;
    s.neighbors_per_node = spec->neighbors_per_node;
    s.feat_dim = spec->feat_dim;
    s.class_separation = spec->class_separation;
    s.feature_noise_std = spec->noise_std;
    s.seed = spec->seed;
    *out = new gnndp_graph{gnndp::GenerateSynthetic(s)};
  });
}

gnndp_status gnndp_graph_load_csv(const char* features_path, const char* labels_path,
                                  int standardize, int skip_header, gnndp_graph** out) {
  return Guard([&] {
    RequireNonNull(features_path, "features_path");
    RequireNonNull(labels_path, "labels_path");
    RequireNonNull(out, "out");
    gnndp::CsvOptions options;
    options.standardize = standardize != 0;
    options.skip_header = skip_header != 0;
    *out = new gnndp_graph{gnndp::LoadCsv(features_path, labels_path, options)};
  });
}

gnndp_status gnndp_graph_build_knn(const gnndp_graph* graph, size_t k, const char* metric,
                                   size_t threads, gnndp_graph** out) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(out, "out");
    const auto m = gnndp::ParseKnnMetric(metric ? metric : "euclidean");
    *out = new gnndp_graph{gnndp::BuildKnnGraph(graph->graph, k, m, threads)};
  });
}

gnndp_status gnndp_graph_assign_splits(const gnndp_graph* graph, double train, double val,
                                       double test, uint64_t seed, gnndp_graph** out) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(out, "out");
    gnndp::SplitSpec spec;
    spec.train_fraction = train;
    spec.val_fraction = val;
    spec.test_fraction = test;
    spec.seed = seed;
    *out = new gnndp_graph{gnndp::AssignSplits(graph->graph, spec)};
  });
}

gnndp_status gnndp_graph_import_edges(const gnndp_graph* graph, const char* edges_path,
                                      gnndp_graph** out) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(edges_path, "edges_path");
    RequireNonNull(out, "out");
    *out = new gnndp_graph{gnndp::ImportEdges(graph->graph, edges_path)};
  });
}

gnndp_status gnndp_graph_export(const gnndp_graph* graph, const char* edges_path,
                                const char* sidecar_path) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(edges_path, "edges_path");
    RequireNonNull(sidecar_path, "sidecar_path");
    gnndp::ExportGraph(graph->graph, edges_path, sidecar_path);
  });
}

gnndp_status gnndp_graph_write_csv(const gnndp_graph* graph, const char* features_path,
                                   const char* labels_path) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(features_path, "features_path");
    RequireNonNull(labels_path, "labels_path");
    gnndp::WriteFeaturesCsv(graph->graph, features_path);
    gnndp::WriteLabelsCsv(graph->graph, labels_path);
  });
}

gnndp_status gnndp_graph_get_stats(const gnndp_graph* graph, gnndp_graph_stats* out) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(out, "out");
    const gnndp::GraphStats s = gnndp::ComputeGraphStats(graph->graph);
    out->num_nodes = s.num_nodes;
    out->num_edges = s.num_edges;
    out->feat_dim = graph->graph.feat_dim();
    out->num_classes = graph->graph.num_classes();
    out->mean_degree = s.mean_degree;
    out->max_degree = s.max_degree;
    out->edge_homophily = s.edge_homophily.value_or(kNaN);
    out->node_homophily = s.node_homophily.value_or(kNaN);
    out->num_train = s.num_train;
    out->num_val = s.num_val;
    out->num_test = s.num_test;
    out->recommended_delta = s.recommended_delta.value_or(kNaN);
  });
}

gnndp_status gnndp_graph_stats_json(const gnndp_graph* graph, char** out_json) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(out_json, "out_json");
    const gnndp::GraphStats s = gnndp::ComputeGraphStats(graph->graph);
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema_version"] = 1;
    j["num_nodes"] = s.num_nodes;
    j["num_edges"] = s.num_edges;
    j["feat_dim"] = graph->graph.feat_dim();
    j["num_classes"] = graph->graph.num_classes();
    j["mean_degree"] = s.mean_degree;
    j["max_degree"] = s.max_degree;
    j["homophily"] = s.edge_homophily ? ordered_json(*s.edge_homophily) : ordered_json();
    j["node_homophily"] = s.node_homophily ? ordered_json(*s.node_homophily) : ordered_json();
    j["class_histogram"] = s.class_histogram;
    j["splits"] = {{"train", s.num_train}, {"val", s.num_val}, {"test", s.num_test}};
    j["recommended_delta"] =
        s.recommended_delta ? ordered_json(*s.recommended_delta) : ordered_json();
    j["provenance"] = {{"generator", graph->graph.provenance().generator},
                       {"seed", graph->graph.provenance().seed},
                       {"warnings", graph->graph.provenance().warnings}};
    *out_json = CopyString(j.dump(2) + "\n");
  });
}

void gnndp_graph_free(gnndp_graph* graph) { delete graph; }

void gnndp_train_config_default(gnndp_train_config* config) {
  if (!config) return;
  const gnndp::TrainConfig d;
  config->model = "gcn";
  config->num_layers = d.num_layers;
  config->hidden_dim = d.hidden_dim;
  config->learning_rate = d.learning_rate;
  config->optimizer = "adam";
  config->momentum = d.momentum;
  config->epochs = d.epochs;
  config->steps = d.steps;
  config->seed = d.seed;
  config->mode = "full_graph";
  config->clipping = 0;
  config->clip_norm = d.clip_norm;
  config->noise = 0;
  config->max_degree = d.max_degree;
  config->occurrence_bound = d.occurrence_bound;
  config->batch_size = d.batch_size;
}

void gnndp_privacy_spec_default(gnndp_privacy_spec* spec) {
  if (!spec) return;
  const gnndp::PrivacySpec d;
  spec->epsilon = d.epsilon_target;
  spec->delta = d.delta;
  spec->clip_norm = d.clip_norm;
  spec->sigma = d.sigma;
  spec->max_degree = d.max_degree;
  spec->occurrence_bound = d.occurrence_bound;
  spec->batch_size = d.batch_size;
  spec->total_steps = d.total_steps;
}

gnndp_status gnndp_model_train(const gnndp_graph* graph, const gnndp_train_config* config,
                               const gnndp_privacy_spec* privacy, gnndp_model** out) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(out, "out");
    const gnndp::TrainConfig c = ToConfig(config);
    std::optional<gnndp::PrivacySpec> dp;
    if (privacy) dp = ToPrivacy(privacy);
    auto* model = new gnndp_model;
    try {
      model->result = gnndp::Train(graph->graph, c, dp ? &*dp : nullptr);
    } catch (...) {
      delete model;
      throw;
    }
    model->trained = true;
    *out = model;
  });
}

gnndp_status gnndp_model_init(const gnndp_graph* graph, const gnndp_train_config* config,
                              gnndp_model** out) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(out, "out");
    auto* model = new gnndp_model;
    try {
      model->result.params = gnndp::InitialParams(graph->graph, ToConfig(config));
    } catch (...) {
      delete model;
      throw;
    }
    *out = model;
  });
}

gnndp_status gnndp_model_info_json(const gnndp_model* model, char** out_json) {
  return Guard([&] {
    RequireNonNull(model, "model");
    RequireNonNull(out_json, "out_json");
    const gnndp::TrainResult& r = model->result;
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["trained"] = model->trained;
    j["num_params"] = r.params.size();
    j["best_epoch"] = r.best_epoch;
    j["best_val_acc"] = r.best_val_acc;
    if (r.sigma) j["sigma"] = *r.sigma;
    if (r.delta) j["delta"] = *r.delta;
    if (r.epsilon_spent) j["epsilon_spent"] = *r.epsilon_spent;
    if (r.rdp_order) j["rdp_order"] = *r.rdp_order;
    if (r.num_subgraphs > 0) {
      j["num_subgraphs"] = r.num_subgraphs;
      j["starved_roots"] = r.starved_roots;
      j["occurrence_bound"] = r.occurrence_bound;
    }
    *out_json = CopyString(j.dump(2) + "\n");
  });
}

gnndp_status gnndp_model_train_log(const gnndp_model* model, char** out_jsonl) {
  return Guard([&] {
    RequireNonNull(model, "model");
    RequireNonNull(out_jsonl, "out_jsonl");
    *out_jsonl = CopyString(gnndp::FormatTrainLog(model->result.log));
  });
}

gnndp_status gnndp_model_evaluate(const gnndp_model* model, const gnndp_graph* graph,
                                  const char* split, double* accuracy) {
  return Guard([&] {
    RequireNonNull(model, "model");
    RequireNonNull(graph, "graph");
    RequireNonNull(accuracy, "accuracy");
    *accuracy = gnndp::Evaluate(graph->graph, model->result.params, ParseSplit(split));
  });
}

gnndp_status gnndp_model_save(const gnndp_model* model, const char* path) {
  return Guard([&] {
    RequireNonNull(model, "model");
    RequireNonNull(path, "path");
    gnndp::SaveParams(model->result.params, path);
  });
}

gnndp_status gnndp_model_load(const char* path, gnndp_model** out) {
  return Guard([&] {
    RequireNonNull(path, "path");
    RequireNonNull(out, "out");
    auto* model = new gnndp_model;
    try {
      model->result.params = gnndp::LoadParams(path);
    } catch (...) {
      delete model;
      throw;
    }
    model->trained = true;
    *out = model;
  });
}

void gnndp_model_free(gnndp_model* model) { delete model; }

gnndp_status gnndp_accountant_epsilon(double sigma, size_t n_train, size_t occurrence_bound,
                                      size_t batch_size, size_t steps, double delta,
                                      double* epsilon, double* order) {
  return Guard([&] {
    RequireNonNull(epsilon, "epsilon");
    Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    const gnndp::AccountantState state(sigma, n_train, occurrence_bound, batch_size);
    const gnndp::EpsilonResult r = state.EpsilonAfter(steps, delta);
    *epsilon = r.epsilon;
    if (order) *order = r.order.value_or(kNaN);
  });
}

gnndp_status gnndp_calibrate_sigma(double epsilon_target, double delta, size_t n_train,
                                   size_t occurrence_bound, size_t batch_size, size_t steps,
                                   double* sigma, double* epsilon_spent, double* order) {
  return Guard([&] {
    RequireNonNull(sigma, "sigma");
    gnndp::CalibrationProblem p;
    p.epsilon_target = epsilon_target;
    p.delta = delta;
    p.steps = steps;
    p.N = n_train;
    p.T = occurrence_bound;
    p.m = batch_size;
    const gnndp::CalibrationResult r = gnndp::CalibrateSigma(p);
    *sigma = r.sigma;
    if (epsilon_spent) *epsilon_spent = r.spent.epsilon;
    if (order) *order = r.spent.order.value_or(kNaN);
  });
}

gnndp_status gnndp_supremum_power(double epsilon, double delta, double fpr, int two_sided,
                                  double* power) {
  return Guard([&] {
    RequireNonNull(power, "power");
    *power = gnndp::SupremumPower(
        epsilon, delta, fpr, two_sided ? gnndp::PowerBound::kTwoSided : gnndp::PowerBound::kOneSided);
  });
}

gnndp_status gnndp_recommend_delta(size_t n_train, double* delta) {
  return Guard([&] {
    RequireNonNull(delta, "delta");
    *delta = gnndp::RecommendDelta(n_train);
  });
}

void gnndp_audit_options_default(gnndp_audit_options* options) {
  if (!options) return;
  const gnndp::AuditOptions d;
  options->num_shadows = d.num_shadows;
  options->seed = d.seed;
  options->threads = 0;
  options->fpr = nullptr;
  options->num_fpr = 0;
  options->two_sided = 0;
  options->variant = nullptr;
}

gnndp_status gnndp_audit(const gnndp_graph* graph, const gnndp_model* model,
                         const gnndp_train_config* config, const gnndp_privacy_spec* privacy,
                         const gnndp_audit_options* options, char** report_json,
                         char** roc_csv, int* sound) {
  return Guard([&] {
    RequireNonNull(graph, "graph");
    RequireNonNull(model, "model");
    RequireNonNull(options, "options");
    RequireNonNull(report_json, "report_json");
    const gnndp::TrainConfig c = ToConfig(config);
    std::optional<gnndp::PrivacySpec> dp;
    if (privacy) dp = ToPrivacy(privacy);

    gnndp::AuditTarget target;
    target.params = model->result.params;
    if (dp) {
      target.epsilon = dp->epsilon_target;
      target.delta = model->result.delta;
      target.sigma = model->result.sigma;
      if (!target.delta) {
        target.delta = dp->delta > 0.0 ? dp->delta
                                       : gnndp::RecommendDelta(
                                             graph->graph.NodesWithSplit(gnndp::SplitTag::kTrain).size());
      }
      if (!target.sigma && dp->sigma > 0.0) target.sigma = dp->sigma;
    }
    gnndp::AuditOptions o;
    o.num_shadows = options->num_shadows;
    o.seed = options->seed;
    o.num_threads = options->threads;
    if (options->fpr && options->num_fpr > 0) {
      o.fpr_grid.assign(options->fpr, options->fpr + options->num_fpr);
    }
    o.bound = options->two_sided ? gnndp::PowerBound::kTwoSided : gnndp::PowerBound::kOneSided;
    o.model_variant = options->variant ? options->variant : (dp ? "dp" : "non_dp");
    const gnndp::AttackReport report = gnndp::Audit(graph->graph, target, c, dp ? &*dp : nullptr, o);
    char* json = CopyString(gnndp::FormatReportJson(report));
    if (roc_csv) {
      try {
        *roc_csv = CopyString(gnndp::FormatRocCsv(report.roc));
      } catch (...) {
        std::free(json);
        throw;
      }
    }
    *report_json = json;
    if (sound) *sound = report.Sound() ? 1 : 0;
  });
}

gnndp_status gnndp_run_manifest(const char* manifest_path, const char* output_dir,
                                size_t threads, char** summary_json, int* all_ok) {
  return Guard([&] {
    const gnndp::ExperimentManifest m = LoadWithOverride(manifest_path, output_dir);
    const gnndp::RunSummary run = gnndp::RunExperiment(m, threads);
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["manifest_sha256"] = run.manifest_hash;
    j["output_dir"] = m.output_dir;
    j["cells"] = run.cells.size();
    j["failed"] = run.num_failed;
    j["unsound"] = run.num_unsound;
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& c : run.cells) {
      if (!c.ok) failures.push_back({{"cell", c.key.Id()}, {"error", c.error}});
    }
    j["failures"] = failures;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : run.aggregate) {
      nlohmann::ordered_json row = {{"variant", gnndp::VariantName(r.variant)}};
      row["epsilon"] = r.epsilon ? nlohmann::ordered_json(*r.epsilon) : nlohmann::ordered_json();
      row["seeds"] = r.num_seeds;
      row["mean_acc"] = r.mean_acc;
      row["std_acc"] = r.std_acc;
      rows.push_back(row);
    }
    j["aggregate"] = rows;
    if (summary_json) *summary_json = CopyString(j.dump(2) + "\n");
    if (all_ok) *all_ok = run.ok() ? 1 : 0;
  });
}

gnndp_status gnndp_sweep_homophily(const char* manifest_path, const double* homophily,
                                   size_t count, const char* output_dir, size_t threads,
                                   char** summary_json, int* all_ok) {
  return Guard([&] {
    RequireNonNull(homophily, "homophily");
    const gnndp::ExperimentManifest m = LoadWithOverride(manifest_path, output_dir);
    const std::vector<double> hs(homophily, homophily + count);
    const gnndp::SweepSummary sweep = gnndp::SweepHomophily(m, hs, threads);
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema_version"] = 1;
    j["manifest_sha256"] = gnndp::ManifestHash(m);
    j["output_dir"] = m.output_dir;
    j["failed"] = sweep.num_failed;
    j["unsound"] = sweep.num_unsound;
    ordered_json rows = ordered_json::array();
    for (const auto& r : sweep.rows) {
      ordered_json row = {{"h", r.homophily}, {"variant", gnndp::VariantName(r.row.variant)}};
      row["epsilon"] = r.row.epsilon ? ordered_json(*r.row.epsilon) : ordered_json();
      row["mean_acc"] = r.row.mean_acc;
      row["std_acc"] = r.row.std_acc;
      rows.push_back(row);
    }
    j["rows"] = rows;
    ordered_json spearman = ordered_json::array();
    for (const auto& s : sweep.spearman) {
      ordered_json e = {{"variant", gnndp::VariantName(s.variant)}};
      e["epsilon"] = s.epsilon ? ordered_json(*s.epsilon) : ordered_json();
      e["seed"] = s.seed ? ordered_json(*s.seed) : ordered_json("mean");
      e["spearman"] = s.rho ? ordered_json(*s.rho) : ordered_json();
      spearman.push_back(e);
    }
    j["spearman"] = spearman;
    if (summary_json) *summary_json = CopyString(j.dump(2) + "\n");
    if (all_ok) *all_ok = sweep.ok() ? 1 : 0;
  });
}

gnndp_status gnndp_report(const char* dir, char** text, size_t* num_problems) {
  return Guard([&] {
    RequireNonNull(dir, "dir");
    const gnndp::ResultsReport report = gnndp::WriteReport(dir);
    if (text) *text = CopyString(report.text);
    if (num_problems) *num_problems = report.problems.size();
  });
}

}  // extern "C"
