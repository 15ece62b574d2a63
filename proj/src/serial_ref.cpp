// Copyright (c) 2026 The fairser authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairser/serial_ref.hpp"

#include "fairser/errors.hpp"

namespace fairser::serialref {

void matmul(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols != b.rows) throw DataError("serialref::matmul: shape mismatch");
  out = Matrix(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (int p = 0; p < a.cols; ++p) acc += a.at(i, p) * b.at(p, j);
      out.at(i, j) = acc;
    }
  }
}

void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.rows != b.rows) throw DataError("serialref::matmul_at_b: shape mismatch");
  out = Matrix(a.cols, b.cols);
  for (int i = 0; i < a.cols; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (int p = 0; p < a.rows; ++p) acc += a.at(p, i) * b.at(p, j);
      out.at(i, j) = acc;
    }
  }
}

void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols != b.cols) throw DataError("serialref::matmul_a_bt: shape mismatch");
  out = Matrix(a.rows, b.rows);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < b.rows; ++j) {
      double acc = 0.0;
      for (int p = 0; p < a.cols; ++p) acc += a.at(i, p) * b.at(j, p);
      out.at(i, j) = acc;
    }
  }
}

void colsum(const Matrix& a, Vec& out) {
  out.assign(a.cols, 0.0);
  for (int j = 0; j < a.cols; ++j) {
    double acc = 0.0;
    for (int i = 0; i < a.rows; ++i) acc += a.at(i, j);
    out[j] = acc;
  }
}

}  // namespace fairser::serialref
