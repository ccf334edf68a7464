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

#ifndef GNNDP_GRAPH_CSV_IO_H_
#define GNNDP_GRAPH_CSV_IO_H_

#include <string>

#include "graph/population_graph.h"

namespace gnndp {

struct CsvOptions {
  bool standardize = true;
  bool skip_header = false;
};

// Reads a features CSV (one node per row, comma separated decimals) and a
// labels CSV (one integer per row). The number of classes is max(label) + 1.
// The returned graph has no edges and no split assignment.
PopulationGraph LoadCsv(const std::string& features_path,
                        const std::string& labels_path,
                        const CsvOptions& options = {});

// Same parsing from in-memory text; paths above are read then forwarded here.
PopulationGraph ParseCsv(const std::string& features_text,
                         const std::string& labels_text,
                         const CsvOptions& options = {});

// Zero mean, unit population variance per column. Constant columns become 0.
void StandardizeColumns(std::vector<double>& features, size_t num_rows,
                        size_t num_cols);

void WriteFeaturesCsv(const PopulationGraph& graph, const std::string& path);
void WriteLabelsCsv(const PopulationGraph& graph, const std::string& path);

}  // namespace gnndp

#endif  // GNNDP_GRAPH_CSV_IO_H_
