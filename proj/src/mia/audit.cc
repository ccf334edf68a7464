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

#include "mia/audit.h"

#include <cstdint>
#include <sstream>

#include "common/error.h"
#include "gnn/gcn.h"
#include "json.hpp"
#include "mia/lira.h"

namespace gnndp {

bool AttackReport::Sound() const {
  for (const auto& e : fpr_entries) {
    if (!e.sound) return false;
  }
  return true;
}

std::vector<std::optional<double>> LiraScores(const ShadowEnsemble& ensemble,
                                              std::span<const double> target_phi,
                                              size_t shadow_limit) {
  std::vector<std::optional<double>> scores(ensemble.pool.size());
  std::vector<double> in, out;
  for (size_t i = 0; i < ensemble.pool.size(); ++i) {
    ensemble.Samples(i, shadow_limit, in, out);
    scores[i] = LiraScore(target_phi[ensemble.pool[i]], in, out);
  }
  return scores;
}

AttackReport ScoreAttack(const PopulationGraph& graph, const AuditTarget& target,
                         const ShadowEnsemble& ensemble, const AuditOptions& options) {
  const std::vector<double> target_phi =
      ScaledConfidences(PredictLogits(graph, target.params), graph.labels());
  const auto scores = LiraScores(ensemble, target_phi);

  AttackReport report;
  report.model_variant = options.model_variant;
  report.epsilon = target.epsilon;
  report.delta = target.delta;
  report.num_shadows = ensemble.num_shadows();
  report.seed = options.seed;
  for (size_t i = 0; i < ensemble.pool.size(); ++i) {
    if (!scores[i]) {
      ++report.excluded_nodes;
      continue;
    }
    const uint32_t v = ensemble.pool[i];
    const bool member = graph.split(v) == SplitTag::kTrain;
    report.nodes.push_back(v);
    report.is_member.push_back(member);
    report.scores.push_back(*scores[i]);
    (member ? report.num_members : report.num_nonmembers) += 1;
  }
  report.roc = ComputeRoc(report.scores, report.is_member);

  for (double f : options.fpr_grid) {
    FprEntry e;
    e.fpr = f;
    e.tpr = TprAtFpr(report.roc, f);
    if (target.epsilon && target.delta) {
      e.supremum_power = SupremumPower(*target.epsilon, *target.delta, f, options.bound);
      e.half_width = BinomialHalfWidth95(*e.supremum_power, report.num_members);
      e.sound = e.tpr <= *e.supremum_power + *e.half_width;
    }
    report.fpr_entries.push_back(e);
  }
  return report;
}

AttackReport Audit(const PopulationGraph& graph, const AuditTarget& target,
                   const TrainConfig& config, const PrivacySpec* dp,
                   const AuditOptions& options) {
  std::optional<PrivacySpec> shadow_dp;
  if (dp) {
    shadow_dp = *dp;
    if (target.sigma) shadow_dp->sigma = *target.sigma;
    if (target.delta) shadow_dp->delta = *target.delta;
  }
  const ShadowEnsemble ensemble =
      TrainShadows(graph, config, shadow_dp ? &*shadow_dp : nullptr, options.num_shadows,
                   options.seed, options.num_threads);
  return ScoreAttack(graph, target, ensemble, options);
}

std::string FprKey(double fpr) {
  std::ostringstream out;
  out << fpr;
  return out.str();
}

std::string FormatReportJson(const AttackReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["model_variant"] = report.model_variant;
  if (report.epsilon) j["epsilon"] = *report.epsilon;
  if (report.delta) j["delta"] = *report.delta;
  j["n_shadows"] = report.num_shadows;
  j["auc"] = report.roc.auc;
  nlohmann::ordered_json tpr, power, half_width;
  for (const auto& e : report.fpr_entries) {
    tpr[FprKey(e.fpr)] = e.tpr;
    if (e.supremum_power) power[FprKey(e.fpr)] = *e.supremum_power;
    if (e.half_width) half_width[FprKey(e.fpr)] = *e.half_width;
  }
  j["tpr"] = tpr;
  if (!power.empty()) j["supremum_power"] = power;
  if (!half_width.empty()) j["half_width"] = half_width;
  j["n_members"] = report.num_members;
  j["n_nonmembers"] = report.num_nonmembers;
  j["excluded_nodes"] = report.excluded_nodes;
  j["sound"] = report.Sound();
  j["seed"] = report.seed;
  return j.dump(2) + "\n";
}

std::string FormatRocCsv(const RocCurve& roc) {
  std::ostringstream out;
  out.precision(10);
  out << "fpr,tpr\n";
  for (const auto& p : roc.points) out << p.fpr << ',' << p.tpr << '\n';
  return out.str();
}

}  // namespace gnndp
