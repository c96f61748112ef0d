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

#ifndef SPOOFPRINT_TESTS_GRAD_CASES_H_
#define SPOOFPRINT_TESTS_GRAD_CASES_H_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "grad_check.h"
#include "spoofprint/nn/ops.h"
#include "spoofprint/nn/random.h"

namespace spoofprint::testing_util {

struct GradCase {
  std::string op;
  double rel_error = 0.0;
};

// Central-difference checks of every differentiable op, in double.
inline std::vector<GradCase> RunGradCases() {
  namespace nn = spoofprint::nn;
  std::mt19937_64 rng(2024);
  std::vector<GradCase> out;
  auto add = [&](std::string name, std::vector<DTensor> in,
                 std::function<DTensor(const std::vector<DTensor>&)> f) {
    out.push_back({std::move(name), GradCheck(std::move(in), f)});
  };
  for (Execution exec : {Execution::kSerial, Execution::kParallel}) {
    const std::string tag = exec == Execution::kSerial ? " (serial)" : " (parallel)";
    add("conv1d" + tag,
        {RandomTensor({2, 3, 17}, rng), RandomTensor({4, 3, 3}, rng), RandomTensor({4}, rng)},
        [exec](const std::vector<DTensor>& v) { return nn::Conv1d(v[0], v[1], v[2], 2, 1, exec); });
    add("conv1d dilated" + tag,
        {RandomTensor({2, 2, 20}, rng), RandomTensor({3, 2, 3}, rng), RandomTensor({3}, rng)},
        [exec](const std::vector<DTensor>& v) { return nn::Conv1d(v[0], v[1], v[2], 1, 3, exec); });
  }
  add("relu", {RandomTensor({2, 3, 5}, rng, 0.05)},
      [](const std::vector<DTensor>& v) { return nn::Relu(v[0]); });
  add("dropout", {RandomTensor({2, 3, 6}, rng)}, [](const std::vector<DTensor>& v) {
    nn::Generator gen(5);
    return nn::Dropout(v[0], 0.3, true, &gen);
  });
  add("layer_norm",
      {RandomTensor({2, 5, 4}, rng), RandomTensor({5}, rng), RandomTensor({5}, rng)},
      [](const std::vector<DTensor>& v) { return nn::LayerNormChannels(v[0], v[1], v[2]); });
  add("softmax_over_time", {RandomTensor({2, 3, 6}, rng)}, [](const std::vector<DTensor>& v) {
    const std::vector<std::size_t> lengths = {6, 4};
    return nn::SoftmaxOverTime(v[0], lengths);
  });
  add("attentive_stats", {RandomTensor({2, 3, 7}, rng), RandomTensor({2, 3, 7}, rng)},
      [](const std::vector<DTensor>& v) {
        const std::vector<std::size_t> lengths = {7, 5};
        return nn::AttentiveStats(v[0], nn::SoftmaxOverTime(v[1], lengths), lengths);
      });
  add("linear", {RandomTensor({3, 5}, rng), RandomTensor({4, 5}, rng), RandomTensor({4}, rng)},
      [](const std::vector<DTensor>& v) { return nn::Linear(v[0], v[1], v[2]); });
  add("concat_channels", {RandomTensor({2, 2, 4}, rng), RandomTensor({2, 3, 4}, rng)},
      [](const std::vector<DTensor>& v) { return nn::ConcatChannels(v[0], v[1]); });
  add("gather_time", {RandomTensor({2, 3, 5}, rng)}, [](const std::vector<DTensor>& v) {
    return nn::GatherTime(v[0], {{0, 0, 2, 4}, {1, 3, 3, 3}});
  });
  add("concat_features", {RandomTensor({2, 3}, rng), RandomTensor({2, 4}, rng)},
      [](const std::vector<DTensor>& v) {
        return nn::ConcatFeatures(std::span<const DTensor>(v.data(), 2));
      });
  add("cross_entropy", {RandomTensor({3, 6}, rng)}, [](const std::vector<DTensor>& v) {
    const std::vector<std::size_t> labels = {0, 5, 2};
    return nn::CrossEntropy(v[0], labels);
  });
  return out;
}

}  // namespace spoofprint::testing_util

#endif  // SPOOFPRINT_TESTS_GRAD_CASES_H_
