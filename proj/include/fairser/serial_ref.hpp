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

#ifndef FAIRSER_SERIAL_REF_HPP
#define FAIRSER_SERIAL_REF_HPP

#include "fairser/numerics.hpp"

// Plain-loop counterparts of the OpenMP kernels. The parallel kernels are
// written so each output element is produced by exactly one thread with a
// fixed serial inner order; tests assert bitwise equality against these, and
// the bench target compares wall time.

namespace fairser::serialref {

void matmul(const Matrix& a, const Matrix& b, Matrix& out);
void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& out);
void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& out);
void colsum(const Matrix& a, Vec& out);

}  // namespace fairser::serialref

#endif  // FAIRSER_SERIAL_REF_HPP
