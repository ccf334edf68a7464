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

#include "gnn/matrix.h"

#include <algorithm>

#include "common/error.h"

namespace gnndp {

double SparseMatrix::At(size_t r, size_t c) const {
  for (size_t p = offsets[r]; p < offsets[r + 1]; ++p) {
    if (indices[p] == c) return values[p];
  }
  return 0.0;
}

Matrix SparseMatrix::ToDense() const {
  Matrix out(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t p = offsets[r]; p < offsets[r + 1]; ++p) out(r, indices[p]) = values[p];
  }
  return out;
}

Matrix MatMul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) Fail(ErrorCode::kShape, "matmul inner dimension mismatch");
  Matrix out(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i) {
    double* o = out.data.data() + i * b.cols;
    for (size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* bk = b.data.data() + k * b.cols;
      for (size_t j = 0; j < b.cols; ++j) o[j] += aik * bk[j];
    }
  }
  return out;
}

void AddMatMulTransA(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.rows != b.rows || out.rows != a.cols || out.cols != b.cols) {
    Fail(ErrorCode::kShape, "matmul (A^T B) shape mismatch");
  }
  for (size_t k = 0; k < a.rows; ++k) {
    const double* bk = b.data.data() + k * b.cols;
    for (size_t i = 0; i < a.cols; ++i) {
      const double aki = a(k, i);
      if (aki == 0.0) continue;
      double* o = out.data.data() + i * out.cols;
      for (size_t j = 0; j < b.cols; ++j) o[j] += aki * bk[j];
    }
  }
}

void AddMatMulTransB(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols != b.cols || out.rows != a.rows || out.cols != b.rows) {
    Fail(ErrorCode::kShape, "matmul (A B^T) shape mismatch");
  }
  for (size_t i = 0; i < a.rows; ++i) {
    const double* ai = a.data.data() + i * a.cols;
    for (size_t j = 0; j < b.rows; ++j) {
      const double* bj = b.data.data() + j * b.cols;
      double s = 0.0;
      for (size_t k = 0; k < a.cols; ++k) s += ai[k] * bj[k];
      out(i, j) += s;
    }
  }
}

Matrix SpMM(const SparseMatrix& s, const Matrix& x) {
  if (s.cols != x.rows) Fail(ErrorCode::kShape, "sparse matmul dimension mismatch");
  Matrix out(s.rows, x.cols);
  for (size_t r = 0; r < s.rows; ++r) {
    double* o = out.data.data() + r * x.cols;
    for (size_t p = s.offsets[r]; p < s.offsets[r + 1]; ++p) {
      const double w = s.values[p];
      const double* xr = x.data.data() + static_cast<size_t>(s.indices[p]) * x.cols;
      for (size_t j = 0; j < x.cols; ++j) o[j] += w * xr[j];
    }
  }
  return out;
}

void AddSpMMTrans(const SparseMatrix& s, const Matrix& x, Matrix& out) {
  if (s.rows != x.rows || out.rows != s.cols || out.cols != x.cols) {
    Fail(ErrorCode::kShape, "sparse matmul (S^T X) shape mismatch");
  }
  for (size_t r = 0; r < s.rows; ++r) {
    const double* xr = x.data.data() + r * x.cols;
    for (size_t p = s.offsets[r]; p < s.offsets[r + 1]; ++p) {
      const double w = s.values[p];
      double* o = out.data.data() + static_cast<size_t>(s.indices[p]) * out.cols;
      for (size_t j = 0; j < x.cols; ++j) o[j] += w * xr[j];
    }
  }
}

}  // namespace gnndp
