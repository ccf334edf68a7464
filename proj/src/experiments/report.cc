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

#include "experiments/report.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "common/error.h"
#include "common/file_util.h"
#include "experiments/manifest.h"
#include "experiments/runner.h"
#include "experiments/stats.h"
#include "json.hpp"

namespace gnndp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CellRecord {
  Variant variant;
  std::optional<double> epsilon;
  uint64_t seed;
  double test_acc;
  std::optional<double> auc;
  // fpr key -> value
  std::map<std::string, double> tpr;
  std::map<std::string, double> power;
  std::map<std::string, double> half_width;
};

// Orders groups as variants are declared, DP budgets from loosest to tightest.
struct GroupKey {
  Variant variant;
  std::optional<double> epsilon;
  bool operator<(const GroupKey& o) const {
    if (variant != o.variant) return variant < o.variant;
    return epsilon.value_or(1e300) > o.epsilon.value_or(1e300);
  }
};

CellRecord ParseCell(const json& j) {
  CellRecord c;
  c.variant = ParseVariant(j.at("variant").get<std::string>());
  if (!j.at("epsilon").is_null()) c.epsilon = j["epsilon"].get<double>();
  c.seed = j.at("seed").get<uint64_t>();
  c.test_acc = j.at("train").at("test_acc").get<double>();
  const json& audit = j.at("audit");
  if (!audit.is_null()) {
    c.auc = audit.at("auc").get<double>();
    for (const auto& [k, v] : audit.at("tpr").items()) c.tpr[k] = v.get<double>();
    if (audit.contains("supremum_power")) {
      for (const auto& [k, v] : audit["supremum_power"].items()) c.power[k] = v.get<double>();
    }
    if (audit.contains("half_width")) {
      for (const auto& [k, v] : audit["half_width"].items()) c.half_width[k] = v.get<double>();
    }
  }
  return c;
}

std::string Fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string EpsText(const std::optional<double>& e) { return e ? FormatDouble(*e) : ""; }

double Mean(const std::vector<double>& v) { return ComputeMeanStd(v).mean; }

// Fixed-width text table with a header rule.
std::string RenderTable(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream out;
  for (size_t ri = 0; ri < rows.size(); ++ri) {
    for (size_t i = 0; i < rows[ri].size(); ++i) {
      if (i) out << "  ";
      out << rows[ri][i] << std::string(width[i] - rows[ri][i].size(), ' ');
    }
    out << '\n';
    if (ri == 0) {
      size_t total = 0;
      for (size_t w : width) total += w;
      out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    }
  }
  return out.str();
}

}  // namespace

ResultsReport BuildReport(const std::string& dir) {
  ResultsReport report;
  const fs::path cells_dir = fs::path(dir) / "cells";
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(cells_dir, ec)) {
    for (const auto& entry : fs::directory_iterator(cells_dir, ec)) {
      const std::string name = entry.path().filename().string();
      if (name.size() > 5 && name.ends_with(".json") && !name.ends_with(".log.jsonl")) {
        files.push_back(entry.path());
      }
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<CellRecord> cells;
  std::set<std::string> present;
  for (const auto& path : files) {
    const std::string id = path.stem().string();
    present.insert(id);
    try {
      const json j = json::parse(ReadFile(path.string()));
      if (j.value("status", "") != "ok") {
        report.problems.push_back("failed: " + id + ": " + j.value("error", "unknown error"));
        continue;
      }
      cells.push_back(ParseCell(j));
    } catch (const std::exception& e) {
      report.problems.push_back("corrupt: " + path.string() + ": " + e.what());
    }
  }

  const fs::path manifest_path = fs::path(dir) / "manifest.json";
  if (fs::exists(manifest_path, ec)) {
    try {
      const ExperimentManifest m = LoadManifest(manifest_path.string());
      for (const auto& key : EnumerateCells(m)) {
        if (!present.count(key.Id())) report.problems.push_back("missing: " + key.Id());
      }
    } catch (const std::exception& e) {
      report.problems.push_back("corrupt: " + manifest_path.string() + ": " + e.what());
    }
  }
  report.num_cells = cells.size();
  if (cells.empty()) report.warnings.push_back("no result cells found in " + dir);

  std::map<GroupKey, std::vector<const CellRecord*>> groups;
  std::set<std::string> fpr_keys;
  bool any_audit = false;
  for (const auto& c : cells) {
    groups[{c.variant, c.epsilon}].push_back(&c);
    if (c.auc) any_audit = true;
    for (const auto& [k, v] : c.tpr) fpr_keys.insert(k);
  }
  std::vector<std::string> fprs(fpr_keys.begin(), fpr_keys.end());
  std::sort(fprs.begin(), fprs.end(),
            [](const std::string& a, const std::string& b) { return std::stod(a) < std::stod(b); });

  std::vector<std::vector<std::string>> acc_table = {
      {"variant", "epsilon", "seeds", "test accuracy (%)"}};
  std::vector<std::vector<std::string>> mia_table;
  if (any_audit) {
    std::vector<std::string> head = {"variant", "epsilon", "AUC"};
    for (const auto& f : fprs) head.push_back("TPR@" + f);
    for (const auto& f : fprs) head.push_back("P@" + f);
    mia_table.push_back(head);
  }

  std::ostringstream csv;
  csv << "variant,epsilon,seeds,mean_acc,std_acc";
  if (any_audit) {
    csv << ",auc";
    for (const auto& f : fprs) csv << ",tpr@" << f;
    for (const auto& f : fprs) csv << ",power@" << f;
  }
  csv << '\n';

  for (const auto& [key, members] : groups) {
    std::vector<double> acc;
    for (const auto* c : members) acc.push_back(c->test_acc);
    const MeanStd ms = ComputeMeanStd(acc);
    acc_table.push_back({VariantName(key.variant), EpsText(key.epsilon),
                         std::to_string(acc.size()),
                         Fixed(100.0 * ms.mean, 2) + " +- " + Fixed(100.0 * ms.std, 2)});
    csv << VariantName(key.variant) << ',' << EpsText(key.epsilon) << ',' << acc.size() << ','
        << FormatDouble(ms.mean) << ',' << FormatDouble(ms.std);
    if (any_audit) {
      std::vector<double> auc;
      std::map<std::string, std::vector<double>> tpr, power;
      for (const auto* c : members) {
        if (!c->auc) continue;
        auc.push_back(*c->auc);
        for (const auto& [k, v] : c->tpr) tpr[k].push_back(v);
        for (const auto& [k, v] : c->power) power[k].push_back(v);
      }
      std::vector<std::string> row = {VariantName(key.variant), EpsText(key.epsilon)};
      csv << ',' << (auc.empty() ? "" : FormatDouble(Mean(auc)));
      row.push_back(auc.empty() ? "-" : Fixed(Mean(auc)));
      for (const auto& f : fprs) {
        const bool has = !tpr[f].empty();
        csv << ',' << (has ? FormatDouble(Mean(tpr[f])) : "");
        row.push_back(has ? Fixed(Mean(tpr[f])) : "-");
      }
      for (const auto& f : fprs) {
        const bool has = !power[f].empty();
        csv << ',' << (has ? FormatDouble(Mean(power[f])) : "");
        row.push_back(has ? Fixed(Mean(power[f])) : "");
      }
      if (!auc.empty()) mia_table.push_back(row);
    }
    csv << '\n';
  }
  report.csv = csv.str();

  std::ostringstream bound;
  bound << "variant,epsilon,seed,fpr,tpr,supremum_power,half_width,sound\n";
  std::vector<std::vector<std::string>> bound_table = {
      {"variant", "epsilon", "seed", "FPR", "TPR", "P", "P + half-width", "sound"}};
  for (const auto& [key, members] : groups) {
    for (const auto* c : members) {
      if (!c->auc || c->power.empty()) continue;
      for (const auto& f : fprs) {
        if (!c->tpr.count(f) || !c->power.count(f)) continue;
        const double tpr = c->tpr.at(f);
        const double p = c->power.at(f);
        const double hw = c->half_width.count(f) ? c->half_width.at(f) : 0.0;
        const bool sound = tpr <= p + hw;
        bound << VariantName(key.variant) << ',' << EpsText(key.epsilon) << ',' << c->seed
              << ',' << f << ',' << FormatDouble(tpr) << ',' << FormatDouble(p) << ','
              << FormatDouble(hw) << ',' << (sound ? "true" : "false") << '\n';
        bound_table.push_back({VariantName(key.variant), EpsText(key.epsilon),
                               std::to_string(c->seed), f, Fixed(tpr), Fixed(p),
                               Fixed(p + hw), sound ? "yes" : "NO"});
      }
    }
  }
  report.bound_csv = bound.str();

  std::ostringstream text;
  text << "Results in " << dir << " (" << report.num_cells << " cells)\n\n";
  text << "Test accuracy, mean +- population std over seeds\n" << RenderTable(acc_table);
  if (mia_table.size() > 1) {
    text << "\nMembership inference (mean over seeds; P is the supremum power bound)\n"
         << RenderTable(mia_table);
  }
  if (bound_table.size() > 1) {
    text << "\nEmpirical TPR against the bound\n" << RenderTable(bound_table);
  }
  for (const auto& w : report.warnings) text << "\nwarning: " << w;
  if (!report.problems.empty()) {
    text << "\nProblems:\n";
    for (const auto& p : report.problems) text << "  " << p << '\n';
  }
  if (!report.warnings.empty()) text << '\n';
  report.text = text.str();
  return report;
}

ResultsReport WriteReport(const std::string& dir) {
  ResultsReport report = BuildReport(dir);
  const fs::path base(dir);
  WriteFileAtomic((base / "report.txt").string(), report.text);
  WriteFileAtomic((base / "report.csv").string(), report.csv);
  WriteFileAtomic((base / "report_bound.csv").string(), report.bound_csv);
  return report;
}

}  // namespace gnndp
