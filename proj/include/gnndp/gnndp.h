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

// C interface to libgnndp: node-level differentially private GCN training,
// Renyi accounting and membership-inference auditing on population graphs.
//
// Conventions:
//   - Every fallible call returns a gnndp_status. On failure the message is
//     available from gnndp_last_error() on the same thread until the next
//     failing call.
//   - Handles are opaque and owned by the caller; release them with the
//     matching *_free function. Passing NULL to a free function is a no-op.
//   - Strings returned through char** are heap allocated and released with
//     gnndp_string_free.
//   - Functions that produce a handle leave their inputs untouched.

#ifndef GNNDP_GNNDP_H_
#define GNNDP_GNNDP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GNNDP_API __declspec(dllexport)
#else
#define GNNDP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gnndp_status {
  GNNDP_OK = 0,
  GNNDP_ERR_INVALID_ARGUMENT = 1,
  GNNDP_ERR_PARSE = 2,
  GNNDP_ERR_IO = 3,
  GNNDP_ERR_SHAPE = 4,
  GNNDP_ERR_UNDEFINED_METRIC = 5,
  GNNDP_ERR_CALIBRATION = 6,
  GNNDP_ERR_AUDIT_SETUP = 7,
  GNNDP_ERR_INTERNAL = 8,
} gnndp_status;

typedef struct gnndp_graph gnndp_graph;
typedef struct gnndp_model gnndp_model;

GNNDP_API const char* gnndp_version(void);
GNNDP_API const char* gnndp_status_name(gnndp_status status);
GNNDP_API const char* gnndp_last_error(void);
GNNDP_API void gnndp_string_free(char* str);

/* ---- Graphs ---- */

typedef struct gnndp_synthetic_spec {
  size_t num_nodes;
  double homophily;
  size_t neighbors_per_node;
  size_t feat_dim;
  double class_separation;
  double noise_std;
  uint64_t seed;
} gnndp_synthetic_spec;

typedef struct gnndp_graph_stats {
  size_t num_nodes;
  size_t num_edges;
  size_t feat_dim;
  int num_classes;
  double mean_degree;
  size_t max_degree;
  double edge_homophily; /* NaN for an edgeless graph */
  double node_homophily; /* NaN for an edgeless graph */
  size_t num_train;
  size_t num_val;
  size_t num_test;
  double recommended_delta; /* NaN before splits are assigned */
} gnndp_graph_stats;

GNNDP_API void gnndp_synthetic_spec_default(gnndp_synthetic_spec* spec);
GNNDP_API gnndp_status gnndp_graph_generate_synthetic(const gnndp_synthetic_spec* spec,
                                                      gnndp_graph** out);
/* Edgeless graph from a features CSV and a labels CSV. */
GNNDP_API gnndp_status gnndp_graph_load_csv(const char* features_path, const char* labels_path,
                                            int standardize, int skip_header,
                                            gnndp_graph** out);
/* metric is "euclidean" or "cosine"; threads = 0 uses every core. */
GNNDP_API gnndp_status gnndp_graph_build_knn(const gnndp_graph* graph, size_t k,
                                             const char* metric, size_t threads,
                                             gnndp_graph** out);
GNNDP_API gnndp_status gnndp_graph_assign_splits(const gnndp_graph* graph, double train,
                                                 double val, double test, uint64_t seed,
                                                 gnndp_graph** out);
/* Replaces the edges with those of a "u v" edge-list file. */
GNNDP_API gnndp_status gnndp_graph_import_edges(const gnndp_graph* graph,
                                                const char* edges_path, gnndp_graph** out);
/* Edge list plus JSON sidecar. */
GNNDP_API gnndp_status gnndp_graph_export(const gnndp_graph* graph, const char* edges_path,
                                          const char* sidecar_path);
GNNDP_API gnndp_status gnndp_graph_write_csv(const gnndp_graph* graph,
                                             const char* features_path,
                                             const char* labels_path);
GNNDP_API gnndp_status gnndp_graph_get_stats(const gnndp_graph* graph, gnndp_graph_stats* out);
GNNDP_API gnndp_status gnndp_graph_stats_json(const gnndp_graph* graph, char** out_json);
GNNDP_API void gnndp_graph_free(gnndp_graph* graph);

/* ---- Training ---- */

typedef struct gnndp_train_config {
  const char* model;     /* "gcn" or "mlp" */
  size_t num_layers;
  size_t hidden_dim;
  double learning_rate;
  const char* optimizer; /* "adam" or "sgd" */
  double momentum;
  size_t epochs;         /* full_graph mode */
  size_t steps;          /* subgraph_batch mode */
  uint64_t seed;
  const char* mode;      /* "full_graph" or "subgraph_batch" */
  int clipping;
  double clip_norm;
  int noise;
  size_t max_degree;
  size_t occurrence_bound; /* 0: K * layers + 1 */
  size_t batch_size;
} gnndp_train_config;

typedef struct gnndp_privacy_spec {
  double epsilon;     /* target */
  double delta;       /* <= 0: 1 / (10 * n_train) */
  double clip_norm;
  double sigma;       /* <= 0: calibrated to epsilon */
  size_t max_degree;
  size_t occurrence_bound;
  size_t batch_size;
  size_t total_steps;
} gnndp_privacy_spec;

GNNDP_API void gnndp_train_config_default(gnndp_train_config* config);
GNNDP_API void gnndp_privacy_spec_default(gnndp_privacy_spec* spec);

/* privacy may be NULL for non-DP training. A DP run needs subgraph_batch mode
 * with clipping and noise on. */
GNNDP_API gnndp_status gnndp_model_train(const gnndp_graph* graph,
                                         const gnndp_train_config* config,
                                         const gnndp_privacy_spec* privacy,
                                         gnndp_model** out);
/* Untrained model with seeded initial parameters. */
GNNDP_API gnndp_status gnndp_model_init(const gnndp_graph* graph,
                                        const gnndp_train_config* config,
                                        gnndp_model** out);
/* {best_epoch, best_val_acc, sigma?, delta?, epsilon_spent?, rdp_order?, ...} */
GNNDP_API gnndp_status gnndp_model_info_json(const gnndp_model* model, char** out_json);
/* JSON lines, one record per evaluation. */
GNNDP_API gnndp_status gnndp_model_train_log(const gnndp_model* model, char** out_jsonl);
/* split is "train", "val" or "test". */
GNNDP_API gnndp_status gnndp_model_evaluate(const gnndp_model* model, const gnndp_graph* graph,
                                            const char* split, double* accuracy);
GNNDP_API gnndp_status gnndp_model_save(const gnndp_model* model, const char* path);
GNNDP_API gnndp_status gnndp_model_load(const char* path, gnndp_model** out);
GNNDP_API void gnndp_model_free(gnndp_model* model);

/* ---- Accounting ---- */

/* order is NaN when steps == 0. */
GNNDP_API gnndp_status gnndp_accountant_epsilon(double sigma, size_t n_train,
                                                size_t occurrence_bound, size_t batch_size,
                                                size_t steps, double delta,
                                                double* epsilon, double* order);
GNNDP_API gnndp_status gnndp_calibrate_sigma(double epsilon_target, double delta,
                                             size_t n_train, size_t occurrence_bound,
                                             size_t batch_size, size_t steps,
                                             double* sigma, double* epsilon_spent,
                                             double* order);
GNNDP_API gnndp_status gnndp_supremum_power(double epsilon, double delta, double fpr,
                                            int two_sided, double* power);
GNNDP_API gnndp_status gnndp_recommend_delta(size_t n_train, double* delta);

/* ---- Membership inference ---- */

typedef struct gnndp_audit_options {
  size_t num_shadows;
  uint64_t seed;
  size_t threads;       /* 0: every core */
  const double* fpr;    /* NULL: {0.001, 0.005, 0.01} */
  size_t num_fpr;
  int two_sided;
  const char* variant;  /* label carried into the report */
} gnndp_audit_options;

GNNDP_API void gnndp_audit_options_default(gnndp_audit_options* options);

/* Audits model, trained on graph with config (and privacy for DP targets).
 * The report JSON and the ROC CSV ("fpr,tpr") are returned; roc_csv may be
 * NULL. sound is set to 0 when an empirical TPR exceeds the bound. */
GNNDP_API gnndp_status gnndp_audit(const gnndp_graph* graph, const gnndp_model* model,
                                   const gnndp_train_config* config,
                                   const gnndp_privacy_spec* privacy,
                                   const gnndp_audit_options* options, char** report_json,
                                   char** roc_csv, int* sound);

/* ---- Experiments ---- */

/* Runs a manifest. output_dir overrides the manifest's when non-NULL. The
 * summary is JSON; all_ok is 1 iff every cell succeeded and every audit held
 * its bound. */
GNNDP_API gnndp_status gnndp_run_manifest(const char* manifest_path, const char* output_dir,
                                          size_t threads, char** summary_json, int* all_ok);
GNNDP_API gnndp_status gnndp_sweep_homophily(const char* manifest_path,
                                             const double* homophily, size_t count,
                                             const char* output_dir, size_t threads,
                                             char** summary_json, int* all_ok);
/* Writes report.txt, report.csv and report_bound.csv into dir and returns the
 * text. num_problems counts missing, corrupt and failed cells. */
GNNDP_API gnndp_status gnndp_report(const char* dir, char** text, size_t* num_problems);

#ifdef __cplusplus
}
#endif

#endif  // GNNDP_GNNDP_H_
