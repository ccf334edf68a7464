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

#include "gnn/tape.h"

#include <algorithm>
#include <cmath>

#include "common/error.h"

namespace gnndp {

Tape::Var Tape::Push(Matrix value, bool requires_grad,
                     std::function<void(Tape&, Var)> backward) {
  Node node;
  if (requires_grad) node.grad = Matrix(value.rows, value.cols);
  node.value = std::move(value);
  node.requires_grad = requires_grad;
  node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

Tape::Var Tape::Constant(Matrix value) { return Push(std::move(value), false, nullptr); }

Tape::Var Tape::Parameter(Matrix value) { return Push(std::move(value), true, nullptr); }

Tape::Var Tape::MatMul(Var a, Var b) {
  Matrix out = gnndp::MatMul(value(a), value(b));
  const bool rg = requires_grad(a) || requires_grad(b);
  return Push(std::move(out), rg, [a, b](Tape& t, Var self) {
    const Matrix& g = t.nodes_[self].grad;
    if (t.requires_grad(a)) AddMatMulTransB(g, t.value(b), t.GradOf(a));
    if (t.requires_grad(b)) AddMatMulTransA(t.value(a), g, t.GradOf(b));
  });
}

Tape::Var Tape::SpMM(const SparseMatrix& s, Var x) {
  Matrix out = gnndp::SpMM(s, value(x));
  const SparseMatrix* sp = &s;
  return Push(std::move(out), requires_grad(x), [sp, x](Tape& t, Var self) {
    if (t.requires_grad(x)) AddSpMMTrans(*sp, t.nodes_[self].grad, t.GradOf(x));
  });
}

Tape::Var Tape::AddRowBias(Var x, Var bias) {
  const Matrix& xv = value(x);
  const Matrix& bv = value(bias);
  if (bv.rows != 1 || bv.cols != xv.cols) Fail(ErrorCode::kShape, "bias shape mismatch");
  Matrix out = xv;
  for (size_t r = 0; r < out.rows; ++r) {
    for (size_t c = 0; c < out.cols; ++c) out(r, c) += bv(0, c);
  }
  const bool rg = requires_grad(x) || requires_grad(bias);
  return Push(std::move(out), rg, [x, bias](Tape& t, Var self) {
    const Matrix& g = t.nodes_[self].grad;
    if (t.requires_grad(x)) {
      Matrix& gx = t.GradOf(x);
      for (size_t i = 0; i < g.data.size(); ++i) gx.data[i] += g.data[i];
    }
    if (t.requires_grad(bias)) {
      Matrix& gb = t.GradOf(bias);
      for (size_t r = 0; r < g.rows; ++r) {
        for (size_t c = 0; c < g.cols; ++c) gb(0, c) += g(r, c);
      }
    }
  });
}

Tape::Var Tape::Relu(Var x) {
  Matrix out = value(x);
  for (double& v : out.data) v = std::max(v, 0.0);
  return Push(std::move(out), requires_grad(x), [x](Tape& t, Var self) {
    if (!t.requires_grad(x)) return;
    const Matrix& g = t.nodes_[self].grad;
    const Matrix& in = t.value(x);
    Matrix& gx = t.GradOf(x);
    for (size_t i = 0; i < g.data.size(); ++i) {
      if (in.data[i] > 0.0) gx.data[i] += g.data[i];
    }
  });
}

Tape::Var Tape::MeanSoftmaxCrossEntropy(Var logits, std::span<const int> labels,
                                        std::span<const uint32_t> rows) {
  const Matrix& z = value(logits);
  if (rows.empty()) Fail(ErrorCode::kInvalidArgument, "loss over an empty node set");
  if (labels.size() != z.rows) Fail(ErrorCode::kShape, "label count does not match logits");
  // Softmax probabilities of the selected rows, kept for the backward pass.
  Matrix probs(rows.size(), z.cols);
  double loss = 0.0;
  for (size_t i = 0; i < rows.size(); ++i) {
    auto zr = z.row(rows[i]);
    const double peak = *std::max_element(zr.begin(), zr.end());
    double denom = 0.0;
    for (size_t c = 0; c < z.cols; ++c) denom += std::exp(zr[c] - peak);
    const double log_denom = std::log(denom);
    for (size_t c = 0; c < z.cols; ++c) probs(i, c) = std::exp(zr[c] - peak - log_denom);
    const int y = labels[rows[i]];
    if (y < 0 || static_cast<size_t>(y) >= z.cols) {
      Fail(ErrorCode::kShape, "label outside the logits' class range");
    }
    loss += log_denom - (zr[static_cast<size_t>(y)] - peak);
  }
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  std::vector<uint32_t> row_copy(rows.begin(), rows.end());
  std::vector<int> label_copy;
  label_copy.reserve(rows.size());
  for (uint32_t r : rows) label_copy.push_back(labels[r]);
  return Push(Matrix(1, 1, loss * inv_n), requires_grad(logits),
              [logits, inv_n, probs = std::move(probs), row_copy = std::move(row_copy),
               label_copy = std::move(label_copy)](Tape& t, Var self) {
                if (!t.requires_grad(logits)) return;
                const double g = t.nodes_[self].grad(0, 0) * inv_n;
                Matrix& gz = t.GradOf(logits);
                for (size_t i = 0; i < row_copy.size(); ++i) {
                  for (size_t c = 0; c < probs.cols; ++c) {
                    const double onehot = static_cast<int>(c) == label_copy[i] ? 1.0 : 0.0;
                    gz(row_copy[i], c) += g * (probs(i, c) - onehot);
                  }
                }
              });
}

void Tape::Backward(Var out) {
  if (value(out).rows != 1 || value(out).cols != 1) {
    Fail(ErrorCode::kShape, "backward needs a scalar output");
  }
  if (!requires_grad(out)) return;
  nodes_[out].grad(0, 0) = 1.0;
  for (Var v = out + 1; v-- > 0;) {
    if (nodes_[v].requires_grad && nodes_[v].backward) nodes_[v].backward(*this, v);
  }
}

}  // namespace gnndp
