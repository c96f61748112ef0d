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

#include "spoofprint/nn/layers.h"

#include <cmath>

namespace spoofprint::nn {
namespace {

Tensor UniformParameter(std::vector<std::size_t> shape, double bound, Generator* gen) {
  auto t = Tensor::Zeros(std::move(shape), true);
  for (float& v : t.data()) v = static_cast<float>(gen->Uniform(-bound, bound));
  return t;
}

}  // namespace

std::size_t ConvSpec::OutputLength(std::size_t t) const {
  const std::size_t span = dilation * (kernel - 1) + 1;
  return t < span ? 0 : (t - span) / stride + 1;
}

ReceptiveField EffectiveReceptiveField(std::span<const ConvSpec> stack) {
  if (stack.empty()) throw InvalidArgument("receptive field of an empty stack");
  ReceptiveField rf;
  for (const auto& s : stack) {
    if (s.kernel == 0 || s.stride == 0 || s.dilation == 0) {
      throw InvalidArgument("kernel, stride and dilation must be positive");
    }
    rf.size += (s.kernel - 1) * s.dilation * rf.stride;
    rf.stride *= s.stride;
  }
  return rf;
}

std::size_t StackOutputLength(std::span<const ConvSpec> stack, std::size_t input_length) {
  std::size_t t = input_length;
  for (const auto& s : stack) t = s.OutputLength(t);
  return t;
}

Conv1dLayer::Conv1dLayer(const ConvSpec& spec, Generator* gen) : spec_(spec) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(spec.in_channels * spec.kernel));
  weight = UniformParameter({spec.out_channels, spec.in_channels, spec.kernel}, bound, gen);
  bias = UniformParameter({spec.out_channels}, bound, gen);
}

Tensor Conv1dLayer::Forward(const Tensor& x, Execution exec) const {
  return Conv1d(x, weight, bias, spec_.stride, spec_.dilation, exec);
}

void Conv1dLayer::CollectParameters(const std::string& prefix,
                                    std::vector<NamedParameter>* out) const {
  out->push_back({prefix + ".weight", weight});
  out->push_back({prefix + ".bias", bias});
}

DenseLayer::DenseLayer(std::size_t in, std::size_t out, Generator* gen) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  weight = UniformParameter({out, in}, bound, gen);
  bias = UniformParameter({out}, bound, gen);
}

Tensor DenseLayer::Forward(const Tensor& x) const { return Linear(x, weight, bias); }

void DenseLayer::CollectParameters(const std::string& prefix,
                                   std::vector<NamedParameter>* out) const {
  out->push_back({prefix + ".weight", weight});
  out->push_back({prefix + ".bias", bias});
}

LayerNormLayer::LayerNormLayer(std::size_t channels, double eps) : eps_(eps) {
  gamma = Tensor::FromVector({channels}, std::vector<float>(channels, 1.0f), true);
  beta = Tensor::Zeros({channels}, true);
}

Tensor LayerNormLayer::Forward(const Tensor& x) const {
  return LayerNormChannels(x, gamma, beta, eps_);
}

void LayerNormLayer::CollectParameters(const std::string& prefix,
                                       std::vector<NamedParameter>* out) const {
  out->push_back({prefix + ".gamma", gamma});
  out->push_back({prefix + ".beta", beta});
}

}  // namespace spoofprint::nn
