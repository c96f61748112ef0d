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

#ifndef SPOOFPRINT_NN_OPS_H_
#define SPOOFPRINT_NN_OPS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "spoofprint/execution.h"
#include "spoofprint/nn/random.h"
#include "spoofprint/nn/tensor.h"

namespace spoofprint::nn {

// Differentiable operations. Activations are [batch, channels, time]; dense
// inputs are [batch, features]. `lengths` lists the valid time steps of each
// batch item (empty means every step is valid); steps past the valid length
// are padding and receive zero weight and zero gradient.

// Valid-padding cross-correlation. bias may be undefined.
template <typename T>
BasicTensor<T> Conv1d(const BasicTensor<T>& x, const BasicTensor<T>& weight,
                      const BasicTensor<T>& bias, std::size_t stride, std::size_t dilation,
                      Execution exec = Execution::kParallel);

template <typename T>
BasicTensor<T> Relu(const BasicTensor<T>& x);

// Inverted dropout: survivors are scaled by 1/(1-p). Identity when
// training is false or p == 0.
template <typename T>
BasicTensor<T> Dropout(const BasicTensor<T>& x, double p, bool training, Generator* gen);

// Per (batch, time) position: normalize across channels, then scale by gamma
// and shift by beta (both [channels]).
template <typename T>
BasicTensor<T> LayerNormChannels(const BasicTensor<T>& x, const BasicTensor<T>& gamma,
                                 const BasicTensor<T>& beta, double eps = 1e-5);

// Per (batch, channel): max-subtracted softmax across valid time steps.
template <typename T>
BasicTensor<T> SoftmaxOverTime(const BasicTensor<T>& x,
                               std::span<const std::size_t> lengths = {});

// Weighted mean and variance over valid time, per channel:
// mu = sum_t a h, var = sum_t a (h - mu)^2, clamped at 0. Output
// [batch, 2 * channels] = mu || var.
template <typename T>
BasicTensor<T> AttentiveStats(const BasicTensor<T>& h, const BasicTensor<T>& a,
                              std::span<const std::size_t> lengths = {});

// x [batch, in] -> x W^T + b, W [out, in], b [out] (may be undefined).
template <typename T>
BasicTensor<T> Linear(const BasicTensor<T>& x, const BasicTensor<T>& weight,
                      const BasicTensor<T>& bias);

// Concatenates two activations with equal batch and time along channels.
template <typename T>
BasicTensor<T> ConcatChannels(const BasicTensor<T>& a, const BasicTensor<T>& b);

// y[n, c, t] = x[n, c, index[n][t]]; every index[n] has the same length.
template <typename T>
BasicTensor<T> GatherTime(const BasicTensor<T>& x,
                          const std::vector<std::vector<std::size_t>>& index);

// Concatenates [batch, f_i] tensors along features.
template <typename T>
BasicTensor<T> ConcatFeatures(std::span<const BasicTensor<T>> parts);

// Mean over the batch of -log softmax(logits)[label], computed via
// log-sum-exp. Returns a one-element tensor.
template <typename T>
BasicTensor<T> CrossEntropy(const BasicTensor<T>& logits, std::span<const std::size_t> labels);

// Row-wise softmax of [batch, classes] values (no gradient).
std::vector<double> SoftmaxRow(std::span<const float> logits);

}  // namespace spoofprint::nn

#endif  // SPOOFPRINT_NN_OPS_H_
