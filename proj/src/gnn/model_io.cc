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

#include "gnn/model_io.h"

#include <bit>
#include <cstring>

#include "common/error.h"
#include "common/file_util.h"
#include "json.hpp"

namespace gnndp {

std::string SerializeParams(const ModelParams& params) {
  nlohmann::ordered_json header;
  header["format"] = "gnndp-params";
  header["version"] = 1;
  header["init_seed"] = params.init_seed();
  header["num_params"] = params.size();
  auto layers = nlohmann::ordered_json::array();
  for (const auto& l : params.layers()) {
    layers.push_back({{"in_dim", l.in_dim}, {"out_dim", l.out_dim},
                      {"kind", LayerKindName(l.kind)}});
  }
  header["layers"] = layers;
  std::string out = header.dump() + "\n";
  for (double x : params.flat()) {
    uint64_t bits = std::bit_cast<uint64_t>(x);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
  }
  return out;
}

ModelParams DeserializeParams(const std::string& bytes) {
  const auto newline = bytes.find('\n');
  if (newline == std::string::npos) Fail(ErrorCode::kParse, "parameter file has no header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(0, newline));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("bad parameter header: ") + e.what());
  }
  if (header.value("format", "") != "gnndp-params") {
    Fail(ErrorCode::kParse, "not a gnndp parameter file");
  }
  std::vector<LayerShape> layers;
  for (const auto& l : header.at("layers")) {
    layers.push_back({l.at("in_dim").get<size_t>(), l.at("out_dim").get<size_t>(),
                      ParseLayerKind(l.at("kind").get<std::string>())});
  }
  const size_t n = header.at("num_params").get<size_t>();
  if (bytes.size() - newline - 1 != n * 8) {
    Fail(ErrorCode::kParse, "parameter payload length does not match header");
  }
  std::vector<double> flat(n);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + newline + 1);
  for (size_t i = 0; i < n; ++i) {
    uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<uint64_t>(p[8 * i + b]) << (8 * b);
    flat[i] = std::bit_cast<double>(bits);
  }
  return ModelParams(std::move(layers), std::move(flat), header.value("init_seed", uint64_t{0}));
}

void SaveParams(const ModelParams& params, const std::string& path) {
  WriteFileAtomic(path, SerializeParams(params));
}

ModelParams LoadParams(const std::string& path) { return DeserializeParams(ReadFile(path)); }

}  // namespace gnndp
