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

#include "fairser/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairser/errors.hpp"

namespace fairser {

namespace {

// Below this many output elements the OpenMP fork costs more than the work.
constexpr long kParallelGrain = 4096;

void check_finite(const Vec& x, const char* what) {
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw NumericError(std::string(what) + ": non-finite input");
    }
  }
}

}  // namespace

void matmul(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols != b.rows) throw DataError("matmul: inner dimensions disagree");
  out = Matrix(a.rows, b.cols);
  const int m = a.rows, k = a.cols, n = b.cols;
#pragma omp parallel for schedule(static) if (static_cast<long>(m) * n >= kParallelGrain)
  for (int i = 0; i < m; ++i) {
    const double* arow = a.row(i);
    double* orow = out.row(i);
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * b.at(p, j);
      orow[j] = acc;
    }
  }
}

void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.rows != b.rows) throw DataError("matmul_at_b: row counts disagree");
  out = Matrix(a.cols, b.cols);
  const int m = a.cols, k = a.rows, n = b.cols;
#pragma omp parallel for schedule(static) if (static_cast<long>(m) * n >= kParallelGrain)
  for (int i = 0; i < m; ++i) {
    double* orow = out.row(i);
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += a.at(p, i) * b.at(p, j);
      orow[j] = acc;
    }
  }
}

void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols != b.cols) throw DataError("matmul_a_bt: column counts disagree");
  out = Matrix(a.rows, b.rows);
  const int m = a.rows, k = a.cols, n = b.rows;
#pragma omp parallel for schedule(static) if (static_cast<long>(m) * n >= kParallelGrain)
  for (int i = 0; i < m; ++i) {
    const double* arow = a.row(i);
    double* orow = out.row(i);
    for (int j = 0; j < n; ++j) {
      const double* brow = b.row(j);
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      orow[j] = acc;
    }
  }
}

void colsum(const Matrix& a, Vec& out) {
  out.assign(a.cols, 0.0);
#pragma omp parallel for schedule(static) if (static_cast<long>(a.rows) * a.cols >= kParallelGrain)
  for (int j = 0; j < a.cols; ++j) {
    double acc = 0.0;
    for (int i = 0; i < a.rows; ++i) acc += a.at(i, j);
    out[j] = acc;
  }
}

Vec softmax(const Vec& x) {
  if (x.empty()) throw NumericError("softmax: empty input");
  check_finite(x, "softmax");
  const double m = *std::max_element(x.begin(), x.end());
  Vec out(x.size());
  double denom = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(x[i] - m);
    denom += out[i];
  }
  for (double& v : out) v /= denom;
  return out;
}

namespace {

// Total order on attention terms that depends only on (score, value row,
// key row), never on the incoming row index. Fully tied rows contribute
// bit-identical terms, so their relative order is irrelevant to the sums.
struct TermLess {
  const Vec& scores;
  const Matrix& keys;
  const Matrix& values;

  bool operator()(int a, int b) const {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    const int d = keys.cols;
    const double* va = values.row(a);
    const double* vb = values.row(b);
    for (int j = 0; j < d; ++j) {
      if (va[j] != vb[j]) return va[j] < vb[j];
    }
    const double* ka = keys.row(a);
    const double* kb = keys.row(b);
    for (int j = 0; j < d; ++j) {
      if (ka[j] != kb[j]) return ka[j] < kb[j];
    }
    return false;
  }
};

}  // namespace

Vec scaled_dot_attention(const Vec& query, const Matrix& keys,
                         const Matrix& values, AttentionCache* cache) {
  const int num_keys = keys.rows;
  const int dim = static_cast<int>(query.size());
  if (num_keys < 1) throw DataError("attention: needs at least one key");
  if (keys.cols != dim || !values.same_shape(keys)) {
    throw DataError("attention: dimension mismatch");
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Vec scores(num_keys);
  for (int k = 0; k < num_keys; ++k) {
    const double* krow = keys.row(k);
    double acc = 0.0;
    for (int j = 0; j < dim; ++j) acc += query[j] * krow[j];
    scores[k] = acc * scale;
  }
  check_finite(scores, "attention scores");

  // Canonical summation order: permutation-independent, hence the context is
  // bit-identical under any joint permutation of (keys, values) rows.
  std::vector<int> order(num_keys);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), TermLess{scores, keys, values});

  const double max_score = scores[order[0]];
  Vec weights(num_keys);
  double denom = 0.0;
  for (const int k : order) {
    weights[k] = std::exp(scores[k] - max_score);
    denom += weights[k];
  }
  for (double& w : weights) w /= denom;

  Vec context(dim, 0.0);
  for (const int k : order) {
    const double* vrow = values.row(k);
    const double w = weights[k];
    for (int j = 0; j < dim; ++j) context[j] += w * vrow[j];
  }
  if (cache) {
    cache->scores = std::move(scores);
    cache->weights = weights;
    cache->order = std::move(order);
  }
  return context;
}

void attention_backward(const AttentionCache& cache, const Vec& query,
                        const Matrix& keys, const Matrix& values,
                        const Vec& dcontext, Vec& dquery, Matrix& dkeys,
                        Matrix& dvalues) {
  const int num_keys = keys.rows;
  const int dim = static_cast<int>(query.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));

  dquery.assign(dim, 0.0);
  dkeys = Matrix(num_keys, dim);
  dvalues = Matrix(num_keys, dim);

  // dvalues[k] = w_k * dcontext; dw_k = <dcontext, v_k>
  Vec dweights(num_keys);
  for (int k = 0; k < num_keys; ++k) {
    const double w = cache.weights[k];
    const double* vrow = values.row(k);
    double* dvrow = dvalues.row(k);
    double acc = 0.0;
    for (int j = 0; j < dim; ++j) {
      dvrow[j] = w * dcontext[j];
      acc += dcontext[j] * vrow[j];
    }
    dweights[k] = acc;
  }

  // Softmax backward: ds_k = w_k (dw_k - sum_j w_j dw_j)
  double weighted = 0.0;
  for (int k = 0; k < num_keys; ++k) weighted += cache.weights[k] * dweights[k];
  for (int k = 0; k < num_keys; ++k) {
    const double dscore = cache.weights[k] * (dweights[k] - weighted) * scale;
    const double* krow = keys.row(k);
    double* dkrow = dkeys.row(k);
    for (int j = 0; j < dim; ++j) {
      dquery[j] += dscore * krow[j];
      dkrow[j] = dscore * query[j];
    }
  }
}

Matrix linear_forward(const Matrix& x, const Matrix& w, const Vec& b) {
  if (x.cols != w.rows || static_cast<int>(b.size()) != w.cols) {
    throw DataError("linear_forward: shape mismatch");
  }
  Matrix y;
  matmul(x, w, y);
  for (int i = 0; i < y.rows; ++i) {
    double* yrow = y.row(i);
    for (int j = 0; j < y.cols; ++j) yrow[j] += b[j];
  }
  return y;
}

void linear_backward(const Matrix& x, const Matrix& w, const Matrix& dy,
                     Matrix& dx, Matrix& dw, Vec& db) {
  if (dy.rows != x.rows || dy.cols != w.cols) {
    throw DataError("linear_backward: shape mismatch");
  }
  matmul_a_bt(dy, w, dx);   // dx = dy W^T
  matmul_at_b(x, dy, dw);   // dw = x^T dy
  colsum(dy, db);
}

CrossEntropyResult cross_entropy(const Vec& logits, int true_class) {
  if (true_class < 0 || true_class >= static_cast<int>(logits.size())) {
    throw DataError("cross_entropy: class index out of range");
  }
  CrossEntropyResult res;
  res.grad = softmax(logits);
  res.loss = -std::log(res.grad[true_class]);
  res.grad[true_class] -= 1.0;
  if (!std::isfinite(res.loss)) {
    throw NumericError("cross_entropy: non-finite loss");
  }
  return res;
}

void AdamState::init(const std::vector<Matrix*>& params) {
  step = 0;
  first_moment.clear();
  second_moment.clear();
  for (const Matrix* p : params) {
    first_moment.emplace_back(p->rows, p->cols);
    second_moment.emplace_back(p->rows, p->cols);
  }
}

void adam_step(const std::vector<Matrix*>& params,
               const std::vector<Matrix>& grads, AdamState& state) {
  if (params.size() != grads.size() ||
      params.size() != state.first_moment.size()) {
    throw DataError("adam_step: tensor count mismatch");
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(state.beta1, state.step);
  const double bc2 = 1.0 - std::pow(state.beta2, state.step);
  for (std::size_t t = 0; t < params.size(); ++t) {
    Matrix& p = *params[t];
    const Matrix& g = grads[t];
    if (!p.same_shape(g)) throw DataError("adam_step: shape mismatch");
    Matrix& m = state.first_moment[t];
    Matrix& v = state.second_moment[t];
    for (std::size_t i = 0; i < p.data.size(); ++i) {
      m.data[i] = state.beta1 * m.data[i] + (1.0 - state.beta1) * g.data[i];
      v.data[i] =
          state.beta2 * v.data[i] + (1.0 - state.beta2) * g.data[i] * g.data[i];
      const double mhat = m.data[i] / bc1;
      const double vhat = v.data[i] / bc2;
      p.data[i] -= state.learning_rate * mhat / (std::sqrt(vhat) + state.epsilon);
    }
  }
}

GradcheckReport gradcheck(const std::function<double()>& loss,
                          const std::vector<Matrix*>& params,
                          const std::vector<Matrix>& analytic,
                          double tolerance, double step_size) {
  if (params.size() != analytic.size()) {
    throw DataError("gradcheck: tensor count mismatch");
  }
  GradcheckReport report;
  for (std::size_t t = 0; t < params.size(); ++t) {
    Matrix& p = *params[t];
    for (std::size_t i = 0; i < p.data.size(); ++i) {
      const double saved = p.data[i];
      p.data[i] = saved + step_size;
      const double up = loss();
      p.data[i] = saved - step_size;
      const double down = loss();
      p.data[i] = saved;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        throw NumericError("gradcheck: non-finite loss during probing");
      }
      const double numeric = (up - down) / (2.0 * step_size);
      const double a = analytic[t].data[i];
      const double rel = std::fabs(a - numeric) /
                         std::max({std::fabs(a), std::fabs(numeric), 1e-8});
      if (rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst_param = static_cast<int>(t);
        report.worst_index = static_cast<int>(i);
      }
    }
  }
  report.pass = report.max_rel_error < tolerance;
  return report;
}

}  // namespace fairser
