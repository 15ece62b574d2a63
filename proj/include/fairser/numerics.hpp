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

#ifndef FAIRSER_NUMERICS_HPP
#define FAIRSER_NUMERICS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fairser {

using Vec = std::vector<double>;

/// Dense row-major matrix, 64-bit values throughout. Desk scale: clarity and
/// reproducible gradient checks over raw speed.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  const double* row(int r) const { return data.data() + static_cast<std::size_t>(r) * cols; }
  double* row(int r) { return data.data() + static_cast<std::size_t>(r) * cols; }

  bool same_shape(const Matrix& other) const {
    return rows == other.rows && cols == other.cols;
  }
  bool empty() const { return data.empty(); }
};

/// out = a * b. Parallel over output rows; each element is a serial
/// fixed-order dot product, so results are bit-identical for any thread
/// count. Small products stay serial.
void matmul(const Matrix& a, const Matrix& b, Matrix& out);
/// out = a^T * b
void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& out);
/// out = a * b^T
void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& out);
/// out[c] = sum over rows of a[., c]
void colsum(const Matrix& a, Vec& out);

/// Numerically stable softmax (max subtraction). Output sums to 1 within
/// 1e-12 for any finite input. Throws NumericError on non-finite input.
Vec softmax(const Vec& x);

/// Context and weights of one scaled dot-product attention query, kept for
/// the backward pass. `order` is the canonical summation order: indices
/// sorted by score descending, ties broken by lexicographic comparison of
/// value then key rows. Any joint permutation of (keys, values) rows yields
/// the same order of terms, so the context is bit-identical under
/// permutation.
struct AttentionCache {
  Vec scores;
  Vec weights;
  std::vector<int> order;
};

/// softmax(query . keys^T / sqrt(D)) . values, without the residual.
/// query: length D; keys, values: K x D, K >= 1.
Vec scaled_dot_attention(const Vec& query, const Matrix& keys,
                         const Matrix& values, AttentionCache* cache = nullptr);

/// Gradients of the attention context w.r.t. query, keys, and values.
void attention_backward(const AttentionCache& cache, const Vec& query,
                        const Matrix& keys, const Matrix& values,
                        const Vec& dcontext, Vec& dquery, Matrix& dkeys,
                        Matrix& dvalues);

/// y = x W + b, with x: N x Din, W: Din x Dout, b: Dout.
Matrix linear_forward(const Matrix& x, const Matrix& w, const Vec& b);
/// Given dL/dy, returns dL/dx and accumulates nothing; dw/db are outputs.
void linear_backward(const Matrix& x, const Matrix& w, const Matrix& dy,
                     Matrix& dx, Matrix& dw, Vec& db);

/// loss = -log softmax(logits)[true_class]; grad = softmax - onehot.
struct CrossEntropyResult {
  double loss = 0.0;
  Vec grad;
};
CrossEntropyResult cross_entropy(const Vec& logits, int true_class);

/// Bias-corrected Adam over a list of tensors. beta1/beta2/eps are the
/// canonical defaults; only the learning rate is configurable.
struct AdamState {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int step = 0;
  std::vector<Matrix> first_moment;
  std::vector<Matrix> second_moment;

  void init(const std::vector<Matrix*>& params);
};

void adam_step(const std::vector<Matrix*>& params,
               const std::vector<Matrix>& grads, AdamState& state);

/// Central-difference gradient check, h = 1e-5. `loss` re-evaluates the
/// forward pass against the current contents of `params`; `analytic` are the
/// backward-pass gradients under test, one per parameter tensor.
struct GradcheckReport {
  double max_rel_error = 0.0;
  int worst_param = -1;
  int worst_index = -1;
  bool pass = false;
};

GradcheckReport gradcheck(const std::function<double()>& loss,
                          const std::vector<Matrix*>& params,
                          const std::vector<Matrix>& analytic,
                          double tolerance, double step_size = 1e-5);

}  // namespace fairser

#endif  // FAIRSER_NUMERICS_HPP
