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

#ifndef GNNDP_EXPERIMENTS_REPORT_H_
#define GNNDP_EXPERIMENTS_REPORT_H_

#include <string>
#include <vector>

namespace gnndp {

struct ResultsReport {
  // Plain-text tables.
  std::string text;
  // variant,epsilon,seeds,mean_acc,std_acc[,auc,tpr@f...,power@f...]
  // The power columns are filled for DP rows only.
  std::string csv;
  // variant,epsilon,seed,fpr,tpr,supremum_power,half_width,sound
  std::string bound_csv;
  size_t num_cells = 0;
  // Missing, corrupt and failed cell files.
  std::vector<std::string> problems;
  std::vector<std::string> warnings;
};

// Merges <dir>/cells/*.json into summary tables. Unreadable cells are listed
// in problems and skipped. When <dir>/manifest.json exists, cells it expects
// but that are absent are listed too.
ResultsReport BuildReport(const std::string& dir);

// BuildReport plus report.txt, report.csv and report_bound.csv written to dir.
ResultsReport WriteReport(const std::string& dir);

}  // namespace gnndp

#endif  // GNNDP_EXPERIMENTS_REPORT_H_
