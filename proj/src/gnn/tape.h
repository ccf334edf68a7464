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

#ifndef GNNDP_GNN_TAPE_H_
#define GNNDP_GNN_TAPE_H_

#include <functional>
#include <span>
#include <vector>

#include "gnn/matrix.h"

namespace gnndp {

// Minimal reverse-mode differentiation over matrices. Each op appends a node
// holding its value and a closure that pushes the node's gradient into its
// inputs. Gradients are only allocated for nodes that depend on a parameter.
class Tape {
 public:
  using Var = size_t;

  Var Constant(Matrix value);
  Var Parameter(Matrix value);

  Var MatMul(Var a, Var b);
  // s must outlive the tape.
  Var SpMM(const SparseMatrix& s, Var x);
  // x + 1 * bias, bias is 1 x cols.
  Var AddRowBias(Var x, Var bias);
  Var Relu(Var x);
  // Mean softmax cross-entropy over the listed rows. Scalar (1 x 1) output.
  Var MeanSoftmaxCrossEntropy(Var logits, std::span<const int> labels,
                              std::span<const uint32_t> rows);

  const Matrix& value(Var v) const { return nodes_[v].value; }
  // Zero-sized unless the node requires a gradient.
  const Matrix& grad(Var v) const { return nodes_[v].grad; }
  bool requires_grad(Var v) const { return nodes_[v].requires_grad; }

  // Seeds d(out)/d(out) = 1 for a scalar out and sweeps the tape backwards.
  void Backward(Var out);

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool requires_grad = false;
    std::function<void(Tape&, Var)> backward;
  };

  Var Push(Matrix value, bool requires_grad, std::function<void(Tape&, Var)> backward);
  Matrix& GradOf(Var v) { return nodes_[v].grad; }

  std::vector<Node> nodes_;
};

}  // namespace gnndp

#endif  // GNNDP_GNN_TAPE_H_
