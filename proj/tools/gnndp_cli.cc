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

// gnndp command line front end. Everything goes through the C API.
//
// Exit codes: 0 success, 1 a cell failed or an audit exceeded its bound,
// 2 usage or runtime error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gnndp/gnndp.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Check(gnndp_status status, const std::string& what) {
  if (status != GNNDP_OK) {
    throw CliError(what + ": " + gnndp_status_name(status) + ": " + gnndp_last_error());
  }
}

// Owns a string returned by the C API.
std::string Take(char* s) {
  std::string out = s ? s : "";
  gnndp_string_free(s);
  return out;
}

struct GraphHandle {
  gnndp_graph* g = nullptr;
  GraphHandle() = default;
  explicit GraphHandle(gnndp_graph* p) : g(p) {}
  GraphHandle(GraphHandle&& o) noexcept : g(o.g) { o.g = nullptr; }
  GraphHandle(const GraphHandle&) = delete;
  GraphHandle& operator=(const GraphHandle&) = delete;
  GraphHandle& operator=(GraphHandle&& o) noexcept {
    std::swap(g, o.g);
    return *this;
  }
  ~GraphHandle() { gnndp_graph_free(g); }
};

struct ModelHandle {
  gnndp_model* m = nullptr;
  ~ModelHandle() { gnndp_model_free(m); }
};

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliError("cannot write " + path.string());
}

struct Globals {
  uint64_t seed = 0;
  std::string out = ".";
  size_t threads = 0;
  std::string manifest;
};

struct DataFlags {
  std::string features;
  std::string labels;
  std::string edges;
  bool raw = false;
  bool skip_header = false;
  double train = 0.56;
  double val = 0.14;
  double test = 0.30;

  void Add(CLI::App* app) {
    app->add_option("--features", features, "features CSV")->required();
    app->add_option("--labels", labels, "labels CSV")->required();
    app->add_option("--edges", edges, "edge list (\"u v\" per line)")->required();
    app->add_flag("--raw", raw, "skip feature standardization");
    app->add_flag("--skip-header", skip_header, "features CSV has a header row");
    app->add_option("--train", train, "train fraction")->capture_default_str();
    app->add_option("--val", val, "validation fraction")->capture_default_str();
    app->add_option("--test", test, "test fraction")->capture_default_str();
  }

  GraphHandle Load(uint64_t seed) const {
    GraphHandle base, with_edges, split;
    Check(gnndp_graph_load_csv(features.c_str(), labels.c_str(), raw ? 0 : 1,
                               skip_header ? 1 : 0, &base.g),
          "load csv");
    Check(gnndp_graph_import_edges(base.g, edges.c_str(), &with_edges.g), "import edges");
    Check(gnndp_graph_assign_splits(with_edges.g, train, val, test, seed, &split.g),
          "assign splits");
    return split;
  }
};

struct TrainFlags {
  std::string model = "gcn";
  size_t layers = 2;
  size_t hidden = 32;
  double lr = 1e-2;
  std::string optimizer = "adam";
  double momentum = 0.9;
  size_t epochs = 200;
  size_t steps = 1000;
  std::string mode = "full_graph";
  bool clip = false;
  double clip_norm = 1.0;
  size_t max_degree = 5;
  size_t occurrence_bound = 0;
  size_t batch_size = 64;
  std::optional<double> epsilon;
  double delta = 0.0;
  double sigma = 0.0;

  void Add(CLI::App* app) {
    app->add_option("--model", model, "gcn or mlp")->capture_default_str();
    app->add_option("--layers", layers, "layers (hops)")->capture_default_str();
    app->add_option("--hidden", hidden, "hidden width")->capture_default_str();
    app->add_option("--lr", lr, "learning rate")->capture_default_str();
    app->add_option("--optimizer", optimizer, "adam or sgd")->capture_default_str();
    app->add_option("--momentum", momentum, "sgd momentum")->capture_default_str();
    app->add_option("--epochs", epochs, "full-graph epochs")->capture_default_str();
    app->add_option("--steps", steps, "sub-graph steps")->capture_default_str();
    app->add_option("--mode", mode, "full_graph or subgraph_batch")->capture_default_str();
    app->add_flag("--clip", clip, "clip per-example gradients");
    app->add_option("--clip-norm", clip_norm, "clip norm C")->capture_default_str();
    app->add_option("--max-degree,-K", max_degree, "neighbors kept per node per hop")
        ->capture_default_str();
    app->add_option("--occurrence-bound,-T", occurrence_bound, "0 means K * layers + 1")
        ->capture_default_str();
    app->add_option("--batch-size,-m", batch_size, "sub-graphs per step")->capture_default_str();
    app->add_option("--epsilon", epsilon, "train with DP at this budget");
    app->add_option("--delta", delta, "DP delta; 0 means 1/(10 n_train)")->capture_default_str();
    app->add_option("--sigma", sigma, "fixed noise multiplier; 0 calibrates")
        ->capture_default_str();
  }

  gnndp_train_config Config(uint64_t seed) const {
    gnndp_train_config c;
    gnndp_train_config_default(&c);
    c.model = model.c_str();
    c.num_layers = layers;
    c.hidden_dim = hidden;
    c.learning_rate = lr;
    c.optimizer = optimizer.c_str();
    c.momentum = momentum;
    c.epochs = epochs;
    c.steps = steps;
    c.seed = seed;
    c.mode = mode.c_str();
    c.clipping = clip ? 1 : 0;
    c.clip_norm = clip_norm;
    c.max_degree = max_degree;
    c.occurrence_bound = occurrence_bound;
    c.batch_size = batch_size;
    if (epsilon) {
      c.mode = "subgraph_batch";
      c.clipping = 1;
      c.noise = 1;
    }
    return c;
  }

  std::optional<gnndp_privacy_spec> Privacy() const {
    if (!epsilon) return std::nullopt;
    gnndp_privacy_spec p;
    gnndp_privacy_spec_default(&p);
    p.epsilon = *epsilon;
    p.delta = delta;
    p.sigma = sigma;
    p.clip_norm = clip_norm;
    p.max_degree = max_degree;
    p.occurrence_bound = occurrence_bound;
    p.batch_size = batch_size;
    p.total_steps = steps;
    return p;
  }
};

ordered_json ParseJson(const std::string& text) { return ordered_json::parse(text); }

void PrintGraphSummary(gnndp_graph* g, const fs::path& out) {
  std::string stats = Take([&] {
    char* s = nullptr;
    Check(gnndp_graph_stats_json(g, &s), "graph stats");
    return s;
  }());
  WriteText(out / "graph_stats.json", stats);
  std::cout << stats;
}

int CmdGenSynthetic(const Globals& g, size_t nodes, double h, size_t k, size_t dim,
                    double sep, double noise) {
  gnndp_synthetic_spec spec;
  gnndp_synthetic_spec_default(&spec);
  spec.num_nodes = nodes;
  spec.homophily = h;
  spec.neighbors_per_node = k;
  spec.feat_dim = dim;
  spec.class_separation = sep;
  spec.noise_std = noise;
  spec.seed = g.seed;
  GraphHandle graph;
  Check(gnndp_graph_generate_synthetic(&spec, &graph.g), "generate");
  const fs::path out(g.out);
  fs::create_directories(out);
  Check(gnndp_graph_write_csv(graph.g, (out / "features.csv").c_str(),
                              (out / "labels.csv").c_str()),
        "write csv");
  Check(gnndp_graph_export(graph.g, (out / "edges.txt").c_str(), (out / "graph.json").c_str()),
        "export");
  PrintGraphSummary(graph.g, out);
  return 0;
}

int CmdBuildGraph(const Globals& g, const std::string& features, const std::string& labels,
                  bool raw, bool skip_header, size_t k, const std::string& metric) {
  GraphHandle base, knn;
  Check(gnndp_graph_load_csv(features.c_str(), labels.c_str(), raw ? 0 : 1, skip_header ? 1 : 0,
                             &base.g),
        "load csv");
  Check(gnndp_graph_build_knn(base.g, k, metric.c_str(), g.threads, &knn.g), "build k-NN");
  const fs::path out(g.out);
  fs::create_directories(out);
  Check(gnndp_graph_export(knn.g, (out / "edges.txt").c_str(), (out / "graph.json").c_str()),
        "export");
  PrintGraphSummary(knn.g, out);
  return 0;
}

ordered_json Accuracies(gnndp_model* m, gnndp_graph* graph) {
  ordered_json acc;
  for (const char* split : {"train", "val", "test"}) {
    double a = 0.0;
    if (gnndp_model_evaluate(m, graph, split, &a) == GNNDP_OK) acc[split] = a;
  }
  return acc;
}

int CmdTrain(const Globals& g, const DataFlags& data, const TrainFlags& train) {
  GraphHandle graph = data.Load(g.seed);
  const gnndp_train_config config = train.Config(g.seed);
  const auto privacy = train.Privacy();
  ModelHandle model;
  Check(gnndp_model_train(graph.g, &config, privacy ? &*privacy : nullptr, &model.m), "train");
  const fs::path out(g.out);
  fs::create_directories(out);
  Check(gnndp_model_save(model.m, (out / "model.bin").c_str()), "save model");
  char* log = nullptr;
  Check(gnndp_model_train_log(model.m, &log), "train log");
  WriteText(out / "train_log.jsonl", Take(log));
  char* info = nullptr;
  Check(gnndp_model_info_json(model.m, &info), "model info");
  ordered_json j = ParseJson(Take(info));
  j["variant"] = privacy ? "dp" : "non_dp";
  if (privacy) j["epsilon_target"] = *train.epsilon;
  j["seed"] = g.seed;
  j["accuracy"] = Accuracies(model.m, graph.g);
  const std::string text = j.dump(2) + "\n";
  WriteText(out / "train.json", text);
  std::cout << text;
  return 0;
}

int CmdAudit(const Globals& g, const DataFlags& data, const TrainFlags& train,
             const std::string& model_path, bool untrained, size_t shadows,
             const std::vector<double>& fpr, bool two_sided) {
  GraphHandle graph = data.Load(g.seed);
  const gnndp_train_config config = train.Config(g.seed);
  const auto privacy = train.Privacy();
  ModelHandle model;
  if (!model_path.empty()) {
    Check(gnndp_model_load(model_path.c_str(), &model.m), "load model");
  } else if (untrained) {
    Check(gnndp_model_init(graph.g, &config, &model.m), "init model");
  } else {
    Check(gnndp_model_train(graph.g, &config, privacy ? &*privacy : nullptr, &model.m),
          "train target");
  }
  gnndp_audit_options options;
  gnndp_audit_options_default(&options);
  options.num_shadows = shadows;
  options.seed = g.seed;
  options.threads = g.threads;
  options.fpr = fpr.data();
  options.num_fpr = fpr.size();
  options.two_sided = two_sided ? 1 : 0;
  const std::string variant = untrained ? "untrained" : (privacy ? "dp" : "non_dp");
  options.variant = variant.c_str();
  char* report = nullptr;
  char* roc = nullptr;
  int sound = 1;
  Check(gnndp_audit(graph.g, model.m, &config, privacy ? &*privacy : nullptr, &options, &report,
                    &roc, &sound),
        "audit");
  const fs::path out(g.out);
  const std::string report_text = Take(report);
  WriteText(out / "audit.json", report_text);
  WriteText(out / "roc.csv", Take(roc));
  std::cout << report_text;
  if (!sound) {
    std::cerr << "audit: empirical TPR exceeds the supremum power bound\n";
    return 1;
  }
  return 0;
}

struct AccountantFlags {
  std::optional<double> sigma;
  std::optional<double> epsilon;
  size_t n_train = 0;
  size_t max_degree = 5;
  size_t hops = 2;
  size_t occurrence_bound = 0;
  size_t batch_size = 64;
  size_t steps = 1000;
  double delta = 0.0;
  double clip_norm = 1.0;

  void Add(CLI::App* app, bool calibrate) {
    if (calibrate) {
      app->add_option("--epsilon", epsilon, "target epsilon")->required();
    } else {
      app->add_option("--sigma", sigma, "noise multiplier")->required();
      app->add_option("--epsilon", epsilon, "target epsilon, echoed in the output");
    }
    app->add_option("--n-train,-N", n_train, "training sub-graphs")->required();
    app->add_option("--max-degree,-K", max_degree, "neighbors per node per hop")
        ->capture_default_str();
    app->add_option("--hops,-r", hops, "hops (layers)")->capture_default_str();
    app->add_option("--occurrence-bound,-T", occurrence_bound, "0 means K * r + 1")
        ->capture_default_str();
    app->add_option("--batch-size,-m", batch_size, "batch size")->capture_default_str();
    app->add_option("--steps", steps, "training steps")->capture_default_str();
    app->add_option("--delta", delta, "0 means 1/(10 N)")->capture_default_str();
    app->add_option("--clip-norm", clip_norm, "clip norm C, echoed")->capture_default_str();
  }

  size_t T() const { return occurrence_bound > 0 ? occurrence_bound : max_degree * hops + 1; }
};

int CmdAccountant(const AccountantFlags& f, bool calibrate) {
  double delta = f.delta;
  if (delta <= 0.0) Check(gnndp_recommend_delta(f.n_train, &delta), "delta");
  double sigma = f.sigma.value_or(0.0);
  double eps = 0.0;
  double order = std::nan("");
  if (calibrate) {
    Check(gnndp_calibrate_sigma(*f.epsilon, delta, f.n_train, f.T(), f.batch_size, f.steps,
                                &sigma, &eps, &order),
          "calibrate");
  } else {
    Check(gnndp_accountant_epsilon(sigma, f.n_train, f.T(), f.batch_size, f.steps, delta, &eps,
                                   &order),
          "accountant");
  }
  ordered_json j;
  j["schema_version"] = 1;
  j["epsilon_target"] = f.epsilon ? ordered_json(*f.epsilon) : ordered_json();
  j["delta"] = delta;
  j["sigma"] = sigma;
  j["clip_norm"] = f.clip_norm;
  j["K"] = f.max_degree;
  j["T"] = f.T();
  j["m"] = f.batch_size;
  j["N"] = f.n_train;
  j["steps"] = f.steps;
  j["epsilon_spent"] = eps;
  j["order_argmin"] = std::isnan(order) ? ordered_json() : ordered_json(order);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int CmdPower(double epsilon, double delta, const std::vector<double>& fpr, bool two_sided) {
  ordered_json j;
  j["schema_version"] = 1;
  j["epsilon"] = epsilon;
  j["delta"] = delta;
  j["bound"] = two_sided ? "two_sided" : "one_sided";
  ordered_json power = ordered_json::object();
  for (double f : fpr) {
    double p = 0.0;
    Check(gnndp_supremum_power(epsilon, delta, f, two_sided ? 1 : 0, &p), "supremum power");
    std::ostringstream key;
    key << f;
    power[key.str()] = p;
  }
  j["supremum_power"] = power;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int CmdRun(const Globals& g, bool out_given) {
  if (g.manifest.empty()) throw CliError("run needs --manifest");
  char* summary = nullptr;
  int ok = 0;
  Check(gnndp_run_manifest(g.manifest.c_str(), out_given ? g.out.c_str() : nullptr, g.threads,
                           &summary, &ok),
        "run");
  std::cout << Take(summary);
  return ok ? 0 : 1;
}

int CmdSweep(const Globals& g, bool out_given, const std::vector<double>& hs) {
  if (g.manifest.empty()) throw CliError("sweep needs --manifest");
  char* summary = nullptr;
  int ok = 0;
  Check(gnndp_sweep_homophily(g.manifest.c_str(), hs.data(), hs.size(),
                              out_given ? g.out.c_str() : nullptr, g.threads, &summary, &ok),
        "sweep");
  std::cout << Take(summary);
  return ok ? 0 : 1;
}

int CmdReport(const std::string& dir) {
  char* text = nullptr;
  size_t problems = 0;
  Check(gnndp_report(dir.c_str(), &text, &problems), "report");
  std::cout << Take(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gnndp: differentially private GNN training and membership-inference auditing"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  auto* out_opt = app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads, 0 for all cores")
      ->capture_default_str();
  app.add_option("--manifest", g.manifest, "experiment manifest (JSON)");
  app.set_version_flag("--version", std::string(gnndp_version()));

  auto* gen = app.add_subcommand("gen-synthetic", "generate a homophily-controlled graph");
  size_t nodes = 1000, syn_k = 5, dim = 10;
  double h = 0.9, sep = 1.5, noise = 1.0;
  gen->add_option("--nodes", nodes, "node count (even)")->capture_default_str();
  gen->add_option("--homophily,-H", h, "target edge homophily")->capture_default_str();
  gen->add_option("--k", syn_k, "neighbor slots per node")->capture_default_str();
  gen->add_option("--feat-dim", dim, "feature dimension")->capture_default_str();
  gen->add_option("--separation", sep, "class center distance")->capture_default_str();
  gen->add_option("--noise-std", noise, "feature noise std")->capture_default_str();

  auto* build = app.add_subcommand("build-graph", "k-NN graph from a features CSV");
  std::string b_features, b_labels, metric = "euclidean";
  bool b_raw = false, b_skip = false;
  size_t knn_k = 5;
  build->add_option("--features", b_features, "features CSV")->required();
  build->add_option("--labels", b_labels, "labels CSV")->required();
  build->add_option("--k", knn_k, "neighbors per node")->capture_default_str();
  build->add_option("--metric", metric, "euclidean or cosine")->capture_default_str();
  build->add_flag("--raw", b_raw, "skip feature standardization");
  build->add_flag("--skip-header", b_skip, "features CSV has a header row");

  auto* train = app.add_subcommand("train", "train a GCN or MLP, optionally with DP");
  DataFlags train_data;
  TrainFlags train_flags;
  train_data.Add(train);
  train_flags.Add(train);

  auto* audit = app.add_subcommand("audit", "LiRA membership-inference audit");
  DataFlags audit_data;
  TrainFlags audit_flags;
  audit_data.Add(audit);
  audit_flags.Add(audit);
  std::string model_path;
  bool untrained = false, two_sided = false;
  size_t shadows = 128;
  std::vector<double> fpr = {0.001, 0.005, 0.01};
  audit->add_option("--model-file", model_path, "audit saved parameters instead of training");
  audit->add_flag("--untrained", untrained, "audit the initial parameters");
  audit->add_option("--shadows", shadows, "shadow models")->capture_default_str();
  audit->add_option("--fpr", fpr, "FPR budgets")->capture_default_str();
  audit->add_flag("--two-sided", two_sided, "use the tight two-sided power bound");

  auto* accountant = app.add_subcommand("accountant", "epsilon spent for a given sigma");
  AccountantFlags acc_flags;
  acc_flags.Add(accountant, false);
  auto* calibrate = app.add_subcommand("calibrate", "smallest sigma meeting an epsilon target");
  AccountantFlags cal_flags;
  cal_flags.Add(calibrate, true);

  auto* power = app.add_subcommand("power", "supremum power of an (epsilon, delta) guarantee");
  double p_eps = 0.0, p_delta = 0.0;
  std::vector<double> p_fpr = {0.001, 0.005, 0.01};
  bool p_two = false;
  power->add_option("--epsilon", p_eps, "epsilon")->required();
  power->add_option("--delta", p_delta, "delta")->required();
  power->add_option("--fpr", p_fpr, "FPR values")->capture_default_str();
  power->add_flag("--two-sided", p_two, "tight two-sided bound");

  auto* run = app.add_subcommand("run", "run every cell of --manifest");
  auto* sweep = app.add_subcommand("sweep", "run --manifest across homophily values");
  std::vector<double> hs = {0.5, 0.6, 0.7, 0.8, 0.9};
  sweep->add_option("--homophily,-H", hs, "homophily values")->capture_default_str();
  auto* report = app.add_subcommand("report", "summarize a results directory");
  std::string report_dir;
  report->add_option("dir", report_dir, "results directory (default --out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const bool out_given = out_opt->count() > 0;
    if (*gen) return CmdGenSynthetic(g, nodes, h, syn_k, dim, sep, noise);
    if (*build) return CmdBuildGraph(g, b_features, b_labels, b_raw, b_skip, knn_k, metric);
    if (*train) return CmdTrain(g, train_data, train_flags);
    if (*audit) {
      return CmdAudit(g, audit_data, audit_flags, model_path, untrained, shadows, fpr, two_sided);
    }
    if (*accountant) return CmdAccountant(acc_flags, false);
    if (*calibrate) return CmdAccountant(cal_flags, true);
    if (*power) return CmdPower(p_eps, p_delta, p_fpr, p_two);
    if (*run) return CmdRun(g, out_given);
    if (*sweep) return CmdSweep(g, out_given, hs);
    if (*report) return CmdReport(report_dir.empty() ? g.out : report_dir);
  } catch (const std::exception& e) {
    std::cerr << "gnndp: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
