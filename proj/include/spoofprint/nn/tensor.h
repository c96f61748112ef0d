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

#ifndef SPOOFPRINT_NN_TENSOR_H_
#define SPOOFPRINT_NN_TENSOR_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "spoofprint/errors.h"

namespace spoofprint::nn {

// Graph recording is on by default; NoGradGuard turns it off for the current
// thread (inference).
class GradMode {
 public:
  static bool enabled() { return enabled_ref(); }
  static void set_enabled(bool on) { enabled_ref() = on; }

 private:
  static bool& enabled_ref() {
    thread_local bool on = true;
    return on;
  }
};

class NoGradGuard {
 public:
  NoGradGuard() : prev_(GradMode::enabled()) { GradMode::set_enabled(false); }
  ~NoGradGuard() { GradMode::set_enabled(prev_); }
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool prev_;
};

template <typename T>
struct TensorNode {
  std::vector<std::size_t> shape;
  std::vector<T> data;
  std::vector<T> grad;  // empty until the first accumulation
  bool requires_grad = false;
  std::vector<std::shared_ptr<TensorNode>> parents;
  // Reads this node's grad and accumulates into the parents' grads.
  std::function<void()> backward;

  std::span<T> EnsureGrad() {
    if (grad.empty()) grad.assign(data.size(), T(0));
    return grad;
  }
};

// Shared handle to a dense row-major array of rank <= 3 with an optional
// gradient. Copies alias the same storage.
template <typename T>
class BasicTensor {
 public:
  using Node = TensorNode<T>;

  BasicTensor() = default;
  explicit BasicTensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  static BasicTensor Zeros(std::vector<std::size_t> shape, bool requires_grad = false) {
    auto node = std::make_shared<Node>();
    const std::size_t n = Count(shape);
    node->shape = std::move(shape);
    node->data.assign(n, T(0));
    node->requires_grad = requires_grad;
    return BasicTensor(std::move(node));
  }

  static BasicTensor FromVector(std::vector<std::size_t> shape, std::vector<T> values,
                                bool requires_grad = false) {
    if (Count(shape) != values.size()) {
      throw InvalidArgument("tensor data size does not match its shape");
    }
    auto node = std::make_shared<Node>();
    node->shape = std::move(shape);
    node->data = std::move(values);
    node->requires_grad = requires_grad;
    return BasicTensor(std::move(node));
  }

  bool defined() const { return node_ != nullptr; }
  const std::vector<std::size_t>& shape() const { return node_->shape; }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t dim(std::size_t i) const { return node_->shape.at(i); }
  std::size_t numel() const { return node_->data.size(); }

  std::span<T> data() { return node_->data; }
  std::span<const T> data() const { return node_->data; }
  bool has_grad() const { return !node_->grad.empty(); }
  // Allocates a zero gradient on first use.
  std::span<T> grad() { return node_->EnsureGrad(); }
  std::span<const T> grad() const { return node_->EnsureGrad(); }
  void ZeroGrad() { node_->grad.clear(); }

  bool requires_grad() const { return node_->requires_grad; }
  void set_requires_grad(bool on) { node_->requires_grad = on; }

  T item() const {
    if (numel() != 1) throw InvalidArgument("item() on a tensor with more than one element");
    return node_->data[0];
  }

  // Copy of the values with no history.
  BasicTensor Detach() const { return FromVector(shape(), node_->data, false); }

  // Throws NumericalError naming `what` on any NaN or Inf.
  void CheckFinite(const std::string& what) const {
    for (T v : node_->data) {
      if (!std::isfinite(v)) throw NumericalError("non-finite value in " + what);
    }
  }

  // Reverse-mode sweep from a scalar with upstream gradient 1.
  void Backward() {
    if (numel() != 1) throw InvalidArgument("Backward() without a seed needs a scalar");
    const T one(1);
    Backward(std::span<const T>(&one, 1));
  }

  // Reverse-mode sweep with an explicit upstream gradient of this tensor's
  // shape. Gradients accumulate into every reachable tensor.
  void Backward(std::span<const T> seed) {
    if (seed.size() != numel()) throw InvalidArgument("backward seed has the wrong size");
    std::vector<Node*> order;
    std::unordered_set<Node*> seen;
    // Iterative post-order DFS: parents precede children in `order`.
    std::vector<std::pair<Node*, std::size_t>> stack{{node_.get(), 0}};
    seen.insert(node_.get());
    while (!stack.empty()) {
      auto& [n, next] = stack.back();
      if (next < n->parents.size()) {
        Node* p = n->parents[next++].get();
        if (p->requires_grad && seen.insert(p).second) stack.push_back({p, 0});
      } else {
        order.push_back(n);
        stack.pop_back();
      }
    }
    auto g = node_->EnsureGrad();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += seed[i];
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if ((*it)->backward && !(*it)->grad.empty()) (*it)->backward();
    }
  }

  const std::shared_ptr<Node>& node() const { return node_; }

  static std::size_t Count(const std::vector<std::size_t>& shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                           std::multiplies<std::size_t>());
  }

 private:
  std::shared_ptr<Node> node_;
};

using Tensor = BasicTensor<float>;

}  // namespace spoofprint::nn

#endif  // SPOOFPRINT_NN_TENSOR_H_
