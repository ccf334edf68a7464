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

#ifndef GNNDP_GNN_MODEL_IO_H_
#define GNNDP_GNN_MODEL_IO_H_

#include <string>

#include "gnn/model_params.h"

namespace gnndp {

// Layout: one line of JSON
//   {"format":"gnndp-params","version":1,"init_seed":..,"num_params":..,
//    "layers":[{"in_dim":..,"out_dim":..,"kind":"gcn_conv"|"dense"},..]}
// terminated by '\n', then num_params little-endian IEEE-754 doubles.
std::string SerializeParams(const ModelParams& params);
ModelParams DeserializeParams(const std::string& bytes);

void SaveParams(const ModelParams& params, const std::string& path);
ModelParams LoadParams(const std::string& path);

}  // namespace gnndp

#endif  // GNNDP_GNN_MODEL_IO_H_
