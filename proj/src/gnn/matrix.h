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

#ifndef GNNDP_GNN_MATRIX_H_
#define GNNDP_GNN_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gnndp {

// Row-major dense matrix.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(size_t r, size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
  Matrix(size_t r, size_t c, std::vector<double> values)
      : rows(r), cols(c), data(std::move(values)) {}

  double& operator()(size_t r, size_t c) { return data[r * cols + c]; }
  double operator()(size_t r, size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(size_t r) const { return {data.data() + r * cols, cols}; }
};

// CSR matrix with explicit values.
struct SparseMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<size_t> offsets{0};
  std::vector<uint32_t> indices;
  std::vector<double> values;

  double At(size_t r, size_t c) const;
  Matrix ToDense() const;
};

// out = a * b
Matrix MatMul(const Matrix& a, const Matrix& b);
// out += a^T * b
void AddMatMulTransA(const Matrix& a, const Matrix& b, Matrix& out);
// out += a * b^T
void AddMatMulTransB(const Matrix& a, const Matrix& b, Matrix& out);
// out = s * x
Matrix SpMM(const SparseMatrix& s, const Matrix& x);
// out += s^T * x
void AddSpMMTrans(const SparseMatrix& s, const Matrix& x, Matrix& out);

}  // namespace gnndp

#endif  // GNNDP_GNN_MATRIX_H_
