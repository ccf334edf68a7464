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

#include "gnn/model_params.h"

#include <cmath>

#include "common/error.h"

namespace gnndp {

size_t ModelParams::FlatLength(const std::vector<LayerShape>& layers) {
  size_t n = 0;
  for (const auto& l : layers) n += l.in_dim * l.out_dim + l.out_dim;
  return n;
}

ModelParams::ModelParams(std::vector<LayerShape> layers, std::vector<double> flat,
                         uint64_t init_seed)
    : layers_(std::move(layers)), flat_(std::move(flat)), init_seed_(init_seed) {
  if (layers_.empty()) Fail(ErrorCode::kShape, "model needs at least one layer");
  for (size_t l = 1; l < layers_.size(); ++l) {
    if (layers_[l].in_dim != layers_[l - 1].out_dim) {
      Fail(ErrorCode::kShape, "consecutive layer widths do not match");
    }
  }
  if (flat_.size() != FlatLength(layers_)) {
    Fail(ErrorCode::kShape, "flat parameter length does not match layer shapes");
  }
  for (double x : flat_) {
    if (!std::isfinite(x)) Fail(ErrorCode::kInvalidArgument, "non-finite parameter");
  }
  ComputeOffsets();
}

void ModelParams::ComputeOffsets() {
  offsets_.clear();
  size_t off = 0;
  for (const auto& l : layers_) {
    offsets_.push_back(off);
    off += l.in_dim * l.out_dim + l.out_dim;
  }
}

ModelParams ModelParams::Initialize(std::vector<LayerShape> layers, uint64_t seed) {
  std::vector<double> flat(FlatLength(layers), 0.0);
  Rng rng = MakeRng(seed, streams::kInit);
  size_t off = 0;
  for (const auto& l : layers) {
    const double limit = std::sqrt(6.0 / static_cast<double>(l.in_dim + l.out_dim));
    for (size_t i = 0; i < l.in_dim * l.out_dim; ++i) {
      flat[off + i] = limit * (2.0 * UniformUnit(rng) - 1.0);
    }
    off += l.in_dim * l.out_dim + l.out_dim;
  }
  return ModelParams(std::move(layers), std::move(flat), seed);
}

Matrix ModelParams::Weight(size_t layer) const {
  const auto& l = layers_[layer];
  const auto* begin = flat_.data() + weight_offset(layer);
  return Matrix(l.in_dim, l.out_dim, std::vector<double>(begin, begin + l.in_dim * l.out_dim));
}

Matrix ModelParams::Bias(size_t layer) const {
  const auto& l = layers_[layer];
  const auto* begin = flat_.data() + bias_offset(layer);
  return Matrix(1, l.out_dim, std::vector<double>(begin, begin + l.out_dim));
}

double ModelParams::Norm() const {
  double s = 0.0;
  for (double x : flat_) s += x * x;
  return std::sqrt(s);
}

void ModelParams::Scale(double factor) {
  for (double& x : flat_) x *= factor;
}

void ModelParams::AddScaled(std::span<const double> delta, double factor) {
  if (delta.size() != flat_.size()) Fail(ErrorCode::kShape, "update length mismatch");
  for (size_t i = 0; i < flat_.size(); ++i) flat_[i] += factor * delta[i];
}

void ModelParams::AddGaussianNoise(double std_dev, Rng& rng) {
  for (double& x : flat_) x += std_dev * StandardNormal(rng);
}

bool ModelParams::IsGcn() const {
  for (const auto& l : layers_) {
    if (l.kind == LayerKind::kGcnConv) return true;
  }
  return false;
}

namespace {

std::vector<LayerShape> StackLayers(size_t in_dim, size_t hidden_dim, size_t num_classes,
                                    size_t num_layers, LayerKind kind) {
  Require(num_layers >= 1, "num_layers must be >= 1");
  Require(in_dim >= 1 && num_classes >= 1, "model dimensions must be positive");
  Require(num_layers == 1 || hidden_dim >= 1, "hidden_dim must be positive");
  std::vector<LayerShape> layers;
  size_t width = in_dim;
  for (size_t l = 0; l < num_layers; ++l) {
    const size_t out = l + 1 == num_layers ? num_classes : hidden_dim;
    layers.push_back({width, out, kind});
    width = out;
  }
  return layers;
}

}  // namespace

std::vector<LayerShape> GcnLayers(size_t in_dim, size_t hidden_dim, size_t num_classes,
                                  size_t num_layers) {
  return StackLayers(in_dim, hidden_dim, num_classes, num_layers, LayerKind::kGcnConv);
}

std::vector<LayerShape> MlpLayers(size_t in_dim, size_t hidden_dim, size_t num_classes,
                                  size_t num_layers) {
  return StackLayers(in_dim, hidden_dim, num_classes, num_layers, LayerKind::kDense);
}

const char* LayerKindName(LayerKind kind) {
  return kind == LayerKind::kGcnConv ? "gcn_conv" : "dense";
}

LayerKind ParseLayerKind(const std::string& name) {
  if (name == "gcn_conv") return LayerKind::kGcnConv;
  if (name == "dense") return LayerKind::kDense;
  Fail(ErrorCode::kParse, "unknown layer kind: " + name);
}

}  // namespace gnndp
