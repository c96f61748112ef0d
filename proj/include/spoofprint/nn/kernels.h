// Copyright 2026 The spoofprint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPOOFPRINT_NN_KERNELS_H_
#define SPOOFPRINT_NN_KERNELS_H_

#include <cstddef>

#include "spoofprint/execution.h"

namespace spoofprint::nn {

// Shapes of a batched valid-padding cross-correlation:
// x [batch, in, time], w [out, in, kernel], y [batch, out, OutputTime()].
struct Conv1dShape {
  std::size_t batch = 1;
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  std::size_t kernel = 1;
  std::size_t stride = 1;
  std::size_t dilation = 1;
  std::size_t time = 1;

  std::size_t Span() const { return dilation * (kernel - 1) + 1; }
  // floor((time - dilation*(kernel-1) - 1) / stride) + 1, or 0 when too short.
  std::size_t OutputTime() const {
    return time < Span() ? 0 : (time - Span()) / stride + 1;
  }
};

// y = conv(x, w) + b. b may be null. kSerial runs the plain loops; kParallel
// runs im2col + row-major GEMM under OpenMP. Both accumulate every output in
// the same order, so the results are bit-identical.
template <typename T>
void Conv1dForward(const Conv1dShape& s, const T* x, const T* w, const T* b, T* y,
                   Execution exec);

// Accumulates (+=) into dx, dw and db; any of them may be null.
template <typename T>
void Conv1dBackward(const Conv1dShape& s, const T* x, const T* w, const T* dy, T* dx,
                    T* dw, T* db, Execution exec);

}  // namespace spoofprint::nn

#endif  // SPOOFPRINT_NN_KERNELS_H_
