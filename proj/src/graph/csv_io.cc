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

#include "graph/csv_io.h"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "common/error.h"
#include "common/file_util.h"

namespace gnndp {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> DataLines(const std::string& text, bool skip_header) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && skip_header) {
      first = false;
      continue;
    }
    first = false;
    if (Trim(line).empty()) continue;
    lines.push_back(line);
  }
  return lines;
}

[[noreturn]] void CellError(const char* file, size_t row, size_t col,
                            const std::string& cell) {
  Fail(ErrorCode::kParse, std::string(file) + " row " + std::to_string(row + 1) +
                              " column " + std::to_string(col + 1) +
                              ": not a number: '" + cell + "'");
}

}  // namespace

void StandardizeColumns(std::vector<double>& features, size_t num_rows,
                        size_t num_cols) {
  if (num_rows == 0) return;
  for (size_t c = 0; c < num_cols; ++c) {
    double mean = 0.0;
    for (size_t r = 0; r < num_rows; ++r) mean += features[r * num_cols + c];
    mean /= static_cast<double>(num_rows);
    double var = 0.0;
    for (size_t r = 0; r < num_rows; ++r) {
      const double d = features[r * num_cols + c] - mean;
      var += d * d;
    }
    var /= static_cast<double>(num_rows);
    const double sd = std::sqrt(var);
    for (size_t r = 0; r < num_rows; ++r) {
      double& x = features[r * num_cols + c];
      x = sd > 0.0 ? (x - mean) / sd : 0.0;
    }
  }
}

PopulationGraph ParseCsv(const std::string& features_text,
                         const std::string& labels_text,
                         const CsvOptions& options) {
  const auto feature_lines = DataLines(features_text, options.skip_header);
  const auto label_lines = DataLines(labels_text, options.skip_header);
  if (feature_lines.size() != label_lines.size()) {
    Fail(ErrorCode::kParse, "row count mismatch: " +
                                std::to_string(feature_lines.size()) +
                                " feature rows vs " +
                                std::to_string(label_lines.size()) + " label rows");
  }
  if (feature_lines.empty()) Fail(ErrorCode::kParse, "features file has no rows");

  size_t feat_dim = 0;
  std::vector<double> features;
  for (size_t r = 0; r < feature_lines.size(); ++r) {
    std::istringstream row(feature_lines[r]);
    std::string cell;
    size_t col = 0;
    while (std::getline(row, cell, ',')) {
      const std::string t = Trim(cell);
      char* end = nullptr;
      errno = 0;
      const double value = std::strtod(t.c_str(), &end);
      if (t.empty() || *end != '\0' || errno == ERANGE) {
        CellError("features", r, col, t);
      }
      features.push_back(value);
      ++col;
    }
    if (r == 0) {
      feat_dim = col;
    } else if (col != feat_dim) {
      Fail(ErrorCode::kParse, "features row " + std::to_string(r + 1) + " has " +
                                  std::to_string(col) + " columns, expected " +
                                  std::to_string(feat_dim));
    }
  }

  std::vector<int> labels;
  int max_label = 0;
  for (size_t r = 0; r < label_lines.size(); ++r) {
    const std::string t = Trim(label_lines[r]);
    char* end = nullptr;
    errno = 0;
    const long value = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || *end != '\0' || errno == ERANGE) CellError("labels", r, 0, t);
    if (value < 0) {
      Fail(ErrorCode::kParse, "labels row " + std::to_string(r + 1) +
                                  ": negative class id");
    }
    labels.push_back(static_cast<int>(value));
    max_label = std::max(max_label, static_cast<int>(value));
  }

  const size_t n = feature_lines.size();
  if (options.standardize) StandardizeColumns(features, n, feat_dim);
  PopulationGraph graph(n, feat_dim, std::move(features), std::move(labels),
                        max_label + 1);
  graph.mutable_provenance().generator = "csv";
  return graph;
}

PopulationGraph LoadCsv(const std::string& features_path,
                        const std::string& labels_path,
                        const CsvOptions& options) {
  return ParseCsv(ReadFile(features_path), ReadFile(labels_path), options);
}

void WriteFeaturesCsv(const PopulationGraph& graph, const std::string& path) {
  std::ostringstream out;
  out.precision(17);
  for (size_t v = 0; v < graph.num_nodes(); ++v) {
    auto row = graph.feature_row(v);
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << row[j];
    }
    out << '\n';
  }
  WriteFileAtomic(path, out.str());
}

void WriteLabelsCsv(const PopulationGraph& graph, const std::string& path) {
  std::ostringstream out;
  for (int y : graph.labels()) out << y << '\n';
  WriteFileAtomic(path, out.str());
}

}  // namespace gnndp
