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

#ifndef GNNDP_MIA_AUDIT_H_
#define GNNDP_MIA_AUDIT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dp/supremum_power.h"
#include "gnn/model_params.h"
#include "gnn/trainer.h"
#include "mia/roc.h"
#include "mia/shadow.h"

namespace gnndp {

inline const std::vector<double> kDefaultFprGrid = {0.001, 0.005, 0.01};

struct AuditOptions {
  size_t num_shadows = 128;
  uint64_t seed = 0;
  size_t num_threads = 1;
  std::vector<double> fpr_grid = kDefaultFprGrid;
  PowerBound bound = PowerBound::kOneSided;
  std::string model_variant = "non_dp";
};

// The audited model together with the guarantee it was trained under.
// epsilon/delta are set for DP targets only; sigma, when set, is reused by
// the DP shadow models instead of recalibrating.
struct AuditTarget {
  ModelParams params;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> sigma;
};

struct FprEntry {
  double fpr = 0.0;
  double tpr = 0.0;
  std::optional<double> supremum_power;
  std::optional<double> half_width;
  // TPR <= supremum_power + half_width; always true for non-DP targets.
  bool sound = true;
};

struct AttackReport {
  std::string model_variant;
  std::optional<double> epsilon;
  std::optional<double> delta;
  size_t num_shadows = 0;
  uint64_t seed = 0;
  // Per scored node (graph node id), member flag and score.
  std::vector<uint32_t> nodes;
  std::vector<uint8_t> is_member;
  std::vector<double> scores;
  size_t num_members = 0;
  size_t num_nonmembers = 0;
  size_t excluded_nodes = 0;
  RocCurve roc;
  std::vector<FprEntry> fpr_entries;

  bool Sound() const;
};

// LiRA scores of the pool nodes against the ensemble; nodes with too few IN
// or OUT samples are left empty. Only the first shadow_limit shadows are used.
std::vector<std::optional<double>> LiraScores(const ShadowEnsemble& ensemble,
                                              std::span<const double> target_phi,
                                              size_t shadow_limit = SIZE_MAX);

// Members are the target's training nodes, non-members its test nodes.
AttackReport ScoreAttack(const PopulationGraph& graph, const AuditTarget& target,
                         const ShadowEnsemble& ensemble, const AuditOptions& options);

// Shadow training, scoring and ROC analysis in one call. dp must be the
// target's privacy spec for DP targets and null otherwise.
AttackReport Audit(const PopulationGraph& graph, const AuditTarget& target,
                   const TrainConfig& config, const PrivacySpec* dp,
                   const AuditOptions& options);

// {schema_version, model_variant, epsilon?, delta?, n_shadows, auc,
//  tpr{fpr: value}, supremum_power{fpr: value}, n_members, n_nonmembers, seed, ...}
std::string FormatReportJson(const AttackReport& report);
// "fpr,tpr" header plus one row per ROC point.
std::string FormatRocCsv(const RocCurve& roc);

std::string FprKey(double fpr);

}  // namespace gnndp

#endif  // GNNDP_MIA_AUDIT_H_
