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

#ifndef SPOOFPRINT_NN_ADAM_H_
#define SPOOFPRINT_NN_ADAM_H_

#include <cstddef>
#include <vector>

#include "spoofprint/nn/tensor.h"

namespace spoofprint::nn {

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Bias-corrected Adam. Moments are kept in double; parameters without a
// gradient are left untouched.
class Adam {
 public:
  Adam(std::vector<Tensor> params, const AdamOptions& opts = {});

  void Step();
  void ZeroGrad();

  std::size_t step() const { return step_; }
  const AdamOptions& options() const { return opts_; }
  const std::vector<std::vector<double>>& first_moment() const { return m_; }
  const std::vector<std::vector<double>>& second_moment() const { return v_; }

 private:
  std::vector<Tensor> params_;
  AdamOptions opts_;
  std::size_t step_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

}  // namespace spoofprint::nn

#endif  // SPOOFPRINT_NN_ADAM_H_
