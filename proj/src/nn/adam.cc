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

#include "spoofprint/nn/adam.h"

#include <cmath>

namespace spoofprint::nn {

Adam::Adam(std::vector<Tensor> params, const AdamOptions& opts)
    : params_(std::move(params)), opts_(opts) {
  if (!(opts.lr > 0.0) || !(opts.beta1 >= 0.0 && opts.beta1 < 1.0) ||
      !(opts.beta2 >= 0.0 && opts.beta2 < 1.0) || !(opts.eps > 0.0)) {
    throw InvalidArgument("invalid Adam hyperparameters");
  }
  for (const auto& p : params_) {
    m_.emplace_back(p.numel(), 0.0);
    v_.emplace_back(p.numel(), 0.0);
  }
}

void Adam::Step() {
  ++step_;
  const double c1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(step_));
  for (std::size_t i = 0; i < params_.size(); ++i) {
    Tensor& p = params_[i];
    if (!p.has_grad()) continue;
    auto g = p.grad();
    auto w = p.data();
    auto& m = m_[i];
    auto& v = v_[i];
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double gj = g[j];
      if (!std::isfinite(gj)) throw NumericalError("non-finite gradient");
      m[j] = opts_.beta1 * m[j] + (1.0 - opts_.beta1) * gj;
      v[j] = opts_.beta2 * v[j] + (1.0 - opts_.beta2) * gj * gj;
      const double mhat = m[j] / c1;
      const double vhat = v[j] / c2;
      w[j] = static_cast<float>(w[j] - opts_.lr * mhat / (std::sqrt(vhat) + opts_.eps));
    }
  }
}

void Adam::ZeroGrad() {
  for (auto& p : params_) p.ZeroGrad();
}

}  // namespace spoofprint::nn
