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

#ifndef SPOOFPRINT_NN_LAYERS_H_
#define SPOOFPRINT_NN_LAYERS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spoofprint/execution.h"
#include "spoofprint/nn/ops.h"
#include "spoofprint/nn/random.h"
#include "spoofprint/nn/tensor.h"

namespace spoofprint::nn {

struct ConvSpec {
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  std::size_t kernel = 1;
  std::size_t stride = 1;
  std::size_t dilation = 1;

  // floor((t - dilation*(kernel-1) - 1)/stride) + 1; 0 when t is too short.
  std::size_t OutputLength(std::size_t t) const;
};

struct ReceptiveField {
  std::size_t size = 1;    // input steps seen by one output step
  std::size_t stride = 1;  // input steps between consecutive output steps

  bool operator==(const ReceptiveField&) const = default;
};

// stride = prod s_i, size = 1 + sum (k_i - 1) d_i prod_{j<i} s_j.
ReceptiveField EffectiveReceptiveField(std::span<const ConvSpec> stack);

// Output length of a stack, 0 when the input is shorter than its receptive
// field.
std::size_t StackOutputLength(std::span<const ConvSpec> stack, std::size_t input_length);

struct NamedParameter {
  std::string name;
  Tensor tensor;
};

// Weights and biases start from U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
class Conv1dLayer {
 public:
  Conv1dLayer() = default;
  Conv1dLayer(const ConvSpec& spec, Generator* gen);

  const ConvSpec& spec() const { return spec_; }
  Tensor Forward(const Tensor& x, Execution exec = Execution::kParallel) const;
  void CollectParameters(const std::string& prefix, std::vector<NamedParameter>* out) const;

  Tensor weight, bias;

 private:
  ConvSpec spec_;
};

class DenseLayer {
 public:
  DenseLayer() = default;
  DenseLayer(std::size_t in, std::size_t out, Generator* gen);

  Tensor Forward(const Tensor& x) const;
  void CollectParameters(const std::string& prefix, std::vector<NamedParameter>* out) const;

  Tensor weight, bias;
};

// Channel-wise layer normalization with unit gain and zero shift at start.
class LayerNormLayer {
 public:
  LayerNormLayer() = default;
  explicit LayerNormLayer(std::size_t channels, double eps = 1e-5);

  Tensor Forward(const Tensor& x) const;
  void CollectParameters(const std::string& prefix, std::vector<NamedParameter>* out) const;

  Tensor gamma, beta;

 private:
  double eps_ = 1e-5;
};

}  // namespace spoofprint::nn

#endif  // SPOOFPRINT_NN_LAYERS_H_
