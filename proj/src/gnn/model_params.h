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

#ifndef GNNDP_GNN_MODEL_PARAMS_H_
#define GNNDP_GNN_MODEL_PARAMS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "common/random.h"
#include "gnn/matrix.h"

namespace gnndp {

enum class LayerKind { kGcnConv, kDense };

struct LayerShape {
  size_t in_dim = 0;
  size_t out_dim = 0;
  LayerKind kind = LayerKind::kGcnConv;
};

// Flat parameter vector. Layer l occupies in_dim * out_dim weights (row-major,
// in x out) followed by out_dim biases.
class ModelParams {
 public:
  ModelParams() = default;
  ModelParams(std::vector<LayerShape> layers, std::vector<double> flat,
              uint64_t init_seed = 0);

  // Glorot-uniform weights with limit sqrt(6 / (in + out)); zero biases.
  static ModelParams Initialize(std::vector<LayerShape> layers, uint64_t seed);

  const std::vector<LayerShape>& layers() const { return layers_; }
  std::span<const double> flat() const { return flat_; }
  std::vector<double>& mutable_flat() { return flat_; }
  size_t size() const { return flat_.size(); }
  uint64_t init_seed() const { return init_seed_; }

  size_t weight_offset(size_t layer) const { return offsets_[layer]; }
  size_t bias_offset(size_t layer) const {
    return offsets_[layer] + layers_[layer].in_dim * layers_[layer].out_dim;
  }
  Matrix Weight(size_t layer) const;
  Matrix Bias(size_t layer) const;

  double Norm() const;
  void Scale(double factor);
  void AddScaled(std::span<const double> delta, double factor);
  void AddGaussianNoise(double std_dev, Rng& rng);

  bool IsGcn() const;

  static size_t FlatLength(const std::vector<LayerShape>& layers);

 private:
  void ComputeOffsets();

  std::vector<LayerShape> layers_;
  std::vector<double> flat_;
  std::vector<size_t> offsets_;
  uint64_t init_seed_ = 0;
};

// num_layers graph convolutions: in -> hidden -> ... -> num_classes.
std::vector<LayerShape> GcnLayers(size_t in_dim, size_t hidden_dim, size_t num_classes,
                                  size_t num_layers);
// Same widths with dense layers.
std::vector<LayerShape> MlpLayers(size_t in_dim, size_t hidden_dim, size_t num_classes,
                                  size_t num_layers);

const char* LayerKindName(LayerKind kind);
LayerKind ParseLayerKind(const std::string& name);

}  // namespace gnndp

#endif  // GNNDP_GNN_MODEL_PARAMS_H_
