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

#include "spoofprint/nn/ops.h"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>

#include "spoofprint/nn/kernels.h"

namespace spoofprint::nn {
namespace {

template <typename T>
using Node = TensorNode<T>;

// Allocates an output whose history records `inputs` when grad mode is on
// and any input requires a gradient.
template <typename T>
BasicTensor<T> MakeOutput(std::vector<std::size_t> shape,
                          std::initializer_list<const BasicTensor<T>*> inputs) {
  auto out = BasicTensor<T>::Zeros(std::move(shape));
  if (!GradMode::enabled()) return out;
  bool any = false;
  for (const auto* in : inputs) any = any || (in->defined() && in->requires_grad());
  if (!any) return out;
  out.node()->requires_grad = true;
  for (const auto* in : inputs) {
    if (in->defined()) out.node()->parents.push_back(in->node());
  }
  return out;
}

template <typename T>
void RequireRank(const BasicTensor<T>& x, std::size_t rank, const char* op) {
  if (!x.defined() || x.rank() != rank) {
    throw InvalidArgument(std::string(op) + ": expected a rank-" + std::to_string(rank) +
                          " tensor");
  }
}

std::vector<std::size_t> ValidLengths(std::span<const std::size_t> lengths, std::size_t batch,
                                      std::size_t time, const char* op) {
  if (lengths.empty()) return std::vector<std::size_t>(batch, time);
  if (lengths.size() != batch) {
    throw InvalidArgument(std::string(op) + ": one length per batch item required");
  }
  for (std::size_t l : lengths) {
    if (l == 0 || l > time) {
      throw InvalidArgument(std::string(op) + ": valid length " + std::to_string(l) +
                            " outside [1, " + std::to_string(time) + "]");
    }
  }
  return {lengths.begin(), lengths.end()};
}

bool Wants(const Node<float>* n) { return n && n->requires_grad; }
bool Wants(const Node<double>* n) { return n && n->requires_grad; }

}  // namespace

template <typename T>
BasicTensor<T> Conv1d(const BasicTensor<T>& x, const BasicTensor<T>& weight,
                      const BasicTensor<T>& bias, std::size_t stride, std::size_t dilation,
                      Execution exec) {
  RequireRank(x, 3, "conv1d input");
  RequireRank(weight, 3, "conv1d weight");
  Conv1dShape s;
  s.batch = x.dim(0);
  s.in_channels = x.dim(1);
  s.time = x.dim(2);
  s.out_channels = weight.dim(0);
  s.kernel = weight.dim(2);
  s.stride = stride;
  s.dilation = dilation;
  if (weight.dim(1) != s.in_channels) {
    throw InvalidArgument("conv1d: input has " + std::to_string(s.in_channels) +
                          " channels, weight expects " + std::to_string(weight.dim(1)));
  }
  if (stride == 0 || dilation == 0 || s.kernel == 0) {
    throw InvalidArgument("conv1d: kernel, stride and dilation must be positive");
  }
  if (bias.defined() && bias.numel() != s.out_channels) {
    throw InvalidArgument("conv1d: bias size does not match output channels");
  }
  if (s.time < s.Span()) {
    throw InvalidArgument("conv1d: input length " + std::to_string(s.time) +
                          " shorter than the kernel span " + std::to_string(s.Span()));
  }
  auto out = MakeOutput<T>({s.batch, s.out_channels, s.OutputTime()}, {&x, &weight, &bias});
  Conv1dForward<T>(s, x.data().data(), weight.data().data(),
                   bias.defined() ? bias.data().data() : nullptr, out.data().data(), exec);
  if (out.requires_grad()) {
    Node<T>* o = out.node().get();
    Node<T>* xn = x.node().get();
    Node<T>* wn = weight.node().get();
    Node<T>* bn = bias.defined() ? bias.node().get() : nullptr;
    o->backward = [=]() {
      Conv1dBackward<T>(s, xn->data.data(), wn->data.data(), o->grad.data(),
                        Wants(xn) ? xn->EnsureGrad().data() : nullptr,
                        Wants(wn) ? wn->EnsureGrad().data() : nullptr,
                        Wants(bn) ? bn->EnsureGrad().data() : nullptr, exec);
    };
  }
  return out;
}

template <typename T>
BasicTensor<T> Relu(const BasicTensor<T>& x) {
  auto out = MakeOutput<T>(x.shape(), {&x});
  auto xd = x.data();
  auto yd = out.data();
  for (std::size_t i = 0; i < xd.size(); ++i) yd[i] = xd[i] > T(0) ? xd[i] : T(0);
  if (out.requires_grad()) {
    Node<T>* o = out.node().get();
    Node<T>* xn = x.node().get();
    o->backward = [=]() {
      auto dx = xn->EnsureGrad();
      for (std::size_t i = 0; i < dx.size(); ++i) {
        if (xn->data[i] > T(0)) dx[i] += o->grad[i];
      }
    };
  }
  return out;
}

template <typename T>
BasicTensor<T> Dropout(const BasicTensor<T>& x, double p, bool training, Generator* gen) {
  if (!(p >= 0.0 && p < 1.0)) throw InvalidArgument("dropout probability must be in [0, 1)");
  if (!training || p == 0.0) return x;
  if (!gen) throw InvalidArgument("dropout in training mode needs a generator");
  auto out = MakeOutput<T>(x.shape(), {&x});
  const T keep_scale = static_cast<T>(1.0 / (1.0 - p));
  std::vector<T> mask(x.numel());
  for (T& m : mask) m = gen->Unit() < p ? T(0) : keep_scale;
  auto xd = x.data();
  auto yd = out.data();
  for (std::size_t i = 0; i < xd.size(); ++i) yd[i] = xd[i] * mask[i];
  if (out.requires_grad()) {
    Node<T>* o = out.node().get();
    Node<T>* xn = x.node().get();
    o->backward = [=, mask = std::move(mask)]() {
      auto dx = xn->EnsureGrad();
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += o->grad[i] * mask[i];
    };
  }
  return out;
}

template <typename T>
BasicTensor<T> LayerNormChannels(const BasicTensor<T>& x, const BasicTensor<T>& gamma,
                                 const BasicTensor<T>& beta, double eps) {
  RequireRank(x, 3, "layer_norm input");
  const std::size_t B = x.dim(0), C = x.dim(1), T_ = x.dim(2);
  if (C == 0) throw InvalidArgument("layer_norm: no channels");
  if (gamma.numel() != C || beta.numel() != C) {
    throw InvalidArgument("layer_norm: affine parameters must have one entry per channel");
  }
  auto out = MakeOutput<T>(x.shape(), {&x, &gamma, &beta});
  std::vector<T> xhat(x.numel());
  std::vector<double> inv_std(B * T_);
  auto xd = x.data();
  auto yd = out.data();
  auto g = gamma.data();
  auto b = beta.data();
  for (std::size_t n = 0; n < B; ++n) {
    for (std::size_t t = 0; t < T_; ++t) {
      const std::size_t base = n * C * T_ + t;
      double mean = 0.0;
      for (std::size_t c = 0; c < C; ++c) mean += xd[base + c * T_];
      mean /= static_cast<double>(C);
      double var = 0.0;
      for (std::size_t c = 0; c < C; ++c) {
        const double d = xd[base + c * T_] - mean;
        var += d * d;
      }
      var /= static_cast<double>(C);
      const double is = 1.0 / std::sqrt(var + eps);
      inv_std[n * T_ + t] = is;
      for (std::size_t c = 0; c < C; ++c) {
        const std::size_t i = base + c * T_;
        const double h = (xd[i] - mean) * is;
        xhat[i] = static_cast<T>(h);
        yd[i] = static_cast<T>(h * g[c] + b[c]);
      }
    }
  }
  if (out.requires_grad()) {
    Node<T>* o = out.node().get();
    Node<T>* xn = x.node().get();
    Node<T>* gn = gamma.node().get();
    Node<T>* bn = beta.node().get();
    o->backward = [=, xhat = std::move(xhat), inv_std = std::move(inv_std)]() {
      const auto& dy = o->grad;
      std::vector<double> dg(C, 0.0), db(C, 0.0);
      std::vector<double> dxhat(C);
      T* dx = Wants(xn) ? xn->EnsureGrad().data() : nullptr;
      for (std::size_t n = 0; n < B; ++n) {
        for (std::size_t t = 0; t < T_; ++t) {
          const std::size_t base = n * C * T_ + t;
          double m1 = 0.0, m2 = 0.0;
          for (std::size_t c = 0; c < C; ++c) {
            const std::size_t i = base + c * T_;
            dg[c] += static_cast<double>(dy[i]) * xhat[i];
            db[c] += dy[i];
            dxhat[c] = static_cast<double>(dy[i]) * gn->data[c];
            m1 += dxhat[c];
            m2 += dxhat[c] * xhat[i];
          }
          if (!dx) continue;
          m1 /= static_cast<double>(C);
          m2 /= static_cast<double>(C);
          const double is = inv_std[n * T_ + t];
          for (std::size_t c = 0; c < C; ++c) {
            const std::size_t i = base + c * T_;
            dx[i] += static_cast<T>(is * (dxhat[c] - m1 - xhat[i] * m2));
          }
        }
      }
      if (Wants(gn)) {
        auto gg = gn->EnsureGrad();
        for (std::size_t c = 0; c < C; ++c) gg[c] += static_cast<T>(dg[c]);
      }
      if (Wants(bn)) {
        auto gb = bn->EnsureGrad();
        for (std::size_t c = 0; c < C; ++c) gb[c] += static_cast<T>(db[c]);
      }
    };
  }
  return out;
}

template <typename T>
BasicTensor<T> SoftmaxOverTime(const BasicTensor<T>& x, std::span<const std::size_t> lengths) {
  RequireRank(x, 3, "softmax_over_time input");
  const std::size_t B = x.dim(0), C = x.dim(1), T_ = x.dim(2);
  if (T_ == 0) throw InvalidArgument("softmax_over_time: empty time axis");
  const auto len = ValidLengths(lengths, B, T_, "softmax_over_time");
  auto out = MakeOutput<T>(x.shape(), {&x});
  auto xd = x.data();
  auto yd = out.data();
  for (std::size_t n = 0; n < B; ++n) {
    for (std::size_t c = 0; c < C; ++c) {
      const std::size_t base = (n * C + c) * T_;
      double mx = -std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < len[n]; ++t) mx = std::max<double>(mx, xd[base + t]);
      double sum = 0.0;
      for (std::size_t t = 0; t < len[n]; ++t) sum += std::exp(xd[base + t] - mx);
      for (std::size_t t = 0; t < len[n]; ++t) {
        yd[base + t] = static_cast<T>(std::exp(xd[base + t] - mx) / sum);
      }
    }
  }
  if (out.requires_grad()) {
    Node<T>* o = out.node().get();
    Node<T>* xn = x.node().get();
    o->backward = [=]() {
      auto dx = xn->EnsureGrad();
      const auto& y = o->data;
      const auto& dy = o->grad;
      for (std::size_t n = 0; n < B; ++n) {
        for (std::size_t c = 0; c < C; ++c) {
          const std::size_t base = (n * C + c) * T_;
          double dot = 0.0;
          for (std::size_t t = 0; t < len[n]; ++t) {
            dot += static_cast<double>(y[base + t]) * dy[base + t];
          }
          for (std::size_t t = 0; t < len[n]; ++t) {
            dx[base + t] += static_cast<T>(y[base + t] * (dy[base + t] - dot));
          }
        }
      }
    };
  }
  return out;
}

template <typename T>
BasicTensor<T> AttentiveStats(const BasicTensor<T>& h, const BasicTensor<T>& a,
                              std::span<const std::size_t> lengths) {
  RequireRank(h, 3, "attentive_stats hidden");
  RequireRank(a, 3, "attentive_stats weights");
  if (h.shape() != a.shape()) {
    throw InvalidArgument("attentive_stats: weights and hidden differ in shape");
  }
  const std::size_t B = h.dim(0), C = h.dim(1), T_ = h.dim(2);
  const auto len = ValidLengths(lengths, B, T_, "attentive_stats");
  for (std::size_t l : len) {
    if (l < 2) throw InvalidArgument("attentive_stats: at least two frames are required");
  }
  auto out = MakeOutput<T>({B, 2 * C}, {&h, &a});
  std::vector<double> mu(B * C);
  auto hd = h.data();
  auto ad = a.data();
  auto yd = out.data();
  for (std::size_t n = 0; n < B; ++n) {
    for (std::size_t c = 0; c < C; ++c) {
      const std::size_t base = (n * C + c) * T_;
      double m = 0.0;
      for (std::size_t t = 0; t < len[n]; ++t) m += static_cast<double>(ad[base + t]) * hd[base + t];
      double v = 0.0;
      for (std::size_t t = 0; t < len[n]; ++t) {
        const double d = hd[base + t] - m;
        v += ad[base + t] * d * d;
      }
      mu[n * C + c] = m;
      yd[n * 2 * C + c] = static_cast<T>(m);
      yd[n * 2 * C + C + c] = static_cast<T>(std::max(v, 0.0));
    }
  }
  if (out.requires_grad()) {
    Node<T>* o = out.node().get();
    Node<T>* hn = h.node().get();
    Node<T>* an = a.node().get();
    o->backward = [=, mu = std::move(mu)]() {
      T* dh = Wants(hn) ? hn->EnsureGrad().data() : nullptr;
      T* da = Wants(an) ? an->EnsureGrad().data() : nullptr;
      const auto& g = o->grad;
      for (std::size_t n = 0; n < B; ++n) {
        for (std::size_t c = 0; c < C; ++c) {
          const std::size_t base = (n * C + c) * T_;
          const double m = mu[n * C + c];
          const double gm = g[n * 2 * C + c];
          const double gv = g[n * 2 * C + C + c];
          // S = sum_t a_t (h_t - mu); zero when the weights sum to one.
          double s = 0.0;
          for (std::size_t t = 0; t < len[n]; ++t) {
            s += static_cast<double>(an->data[base + t]) * (hn->data[base + t] - m);
          }
          for (std::size_t t = 0; t < len[n]; ++t) {
            const double at = an->data[base + t];
            const double ht = hn->data[base + t];
            const double d = ht - m;
            // d var / d mu = -2 S, d mu / d h_t = a_t, d mu / d a_t = h_t.
            const double gmu = gm - 2.0 * s * gv;
            if (dh) dh[base + t] += static_cast<T>(gmu * at + gv * 2.0 * at * d);
            if (da) da[base + t] += static_cast<T>(gmu * ht + gv * d * d);
          }
        }
      }
    };
  }
  return out;
}

template <typename T>
BasicTensor<T> Linear(const BasicTensor<T>& x, const BasicTensor<T>& weight,
                      const BasicTensor<T>& bias) {
  RequireRank(x, 2, "linear input");
  RequireRank(weight, 2, "linear weight");
  const std::size_t B = x.dim(0), I = x.dim(1), O = weight.dim(0);
  if (weight.dim(1) != I) {
    throw InvalidArgument("linear: input has " + std::to_string(I) +
                          " features, weight expects " + std::to_string(weight.dim(1)));
  }
  if (bias.defined() && bias.numel() != O) {
    throw InvalidArgument("linear: bias size does not match outputs");
  }
  auto out = MakeOutput<T>({B, O}, {&x, &weight, &bias});
  auto xd = x.data();
  auto wd = weight.data();
  auto yd = out.data();
  for (std::size_t n = 0; n < B; ++n) {
    for (std::size_t o = 0; o < O; ++o) {
      double acc = bias.defined() ? static_cast<double>(bias.data()[o]) : 0.0;
      for (std::size_t i = 0; i < I; ++i) acc += static_cast<double>(xd[n * I + i]) * wd[o * I + i];
      yd[n * O + o] = static_cast<T>(acc);
    }
  }
  if (out.requires_grad()) {
    Node<T>* o_ = out.node().get();
    Node<T>* xn = x.node().get();
    Node<T>* wn = weight.node().get();
    Node<T>* bn = bias.defined() ? bias.node().get() : nullptr;
    o_->backward = [=]() {
      const auto& dy = o_->grad;
      if (Wants(xn)) {
        auto dx = xn->EnsureGrad();
        for (std::size_t n = 0; n < B; ++n) {
          for (std::size_t i = 0; i < I; ++i) {
            double acc = 0.0;
            for (std::size_t o = 0; o < O; ++o) {
              acc += static_cast<double>(dy[n * O + o]) * wn->data[o * I + i];
            }
            dx[n * I + i] += static_cast<T>(acc);
          }
        }
      }
      if (Wants(wn)) {
        auto dw = wn->EnsureGrad();
        for (std::size_t o = 0; o < O; ++o) {
          for (std::size_t i = 0; i < I; ++i) {
            double acc = 0.0;
            for (std::size_t n = 0; n < B; ++n) {
              acc += static_cast<double>(dy[n * O + o]) * xn->data[n * I + i];
            }
            dw[o * I + i] += static_cast<T>(acc);
          }
        }
      }
      if (Wants(bn)) {
        auto db = bn->EnsureGrad();
        for (std::size_t o = 0; o < O; ++o) {
          double acc = 0.0;
          for (std::size_t n = 0; n < B; ++n) acc += dy[n * O + o];
          db[o] += static_cast<T>(acc);
        }
      }
    };
  }
  return out;
}

template <typename T>
BasicTensor<T> ConcatChannels(const BasicTensor<T>& a, const BasicTensor<T>& b) {
  RequireRank(a, 3, "concat_channels");
  RequireRank(b, 3, "concat_channels");
  if (a.dim(0) != b.dim(0) || a.dim(2) != b.dim(2)) {
    throw InvalidArgument("concat_channels: batch and time must agree");
  }
  const std::size_t B = a.dim(0), Ca = a.dim(1), Cb = b.dim(1), T_ = a.dim(2);
  auto out = MakeOutput<T>({B, Ca + Cb, T_}, {&a, &b});
  auto yd = out.data();
  for (std::size_t n = 0; n < B; ++n) {
    std::copy_n(a.data().data() + n * Ca * T_, Ca * T_, yd.data() + n * (Ca + Cb) * T_);
    std::copy_n(b.data().data() + n * Cb * T_, Cb * T_, yd.data() + (n * (Ca + Cb) + Ca) * T_);
  }
  if (out.requires_grad()) {
    Node<T>* o = out.node().get();
    Node<T>* an = a.node().get();
    Node<T>* bn = b.node().get();
    o->backward = [=]() {
      for (std::size_t n = 0; n < B; ++n) {
        const T* g = o->grad.data() + n * (Ca + Cb) * T_;
        if (Wants(an)) {
          T* da = an->EnsureGrad().data() + n * Ca * T_;
          for (std::size_t i = 0; i < Ca * T_; ++i) da[i] += g[i];
        }
        if (Wants(bn)) {
          T* dbp = bn->EnsureGrad().data() + n * Cb * T_;
          for (std::size_t i = 0; i < Cb * T_; ++i) dbp[i] += g[Ca * T_ + i];
        }
      }
    };
  }
  return out;
}

template <typename T>
BasicTensor<T> GatherTime(const BasicTensor<T>& x,
                          const std::vector<std::vector<std::size_t>>& index) {
  RequireRank(x, 3, "gather_time");
  const std::size_t B = x.dim(0), C = x.dim(1), T_ = x.dim(2);
  if (index.size() != B) throw InvalidArgument("gather_time: one index list per batch item");
  const std::size_t To = index.empty() ? 0 : index[0].size();
  for (const auto& row : index) {
    if (row.size() != To) throw InvalidArgument("gather_time: index lists differ in length");
    for (std::size_t t : row) {
      if (t >= T_) throw InvalidArgument("gather_time: index out of range");
    }
  }
  auto out = MakeOutput<T>({B, C, To}, {&x});
  auto xd = x.data();
  auto yd = out.data();
  for (std::size_t n = 0; n < B; ++n) {
    for (std::size_t c = 0; c < C; ++c) {
      for (std::size_t t = 0; t < To; ++t) {
        yd[(n * C + c) * To + t] = xd[(n * C + c) * T_ + index[n][t]];
      }
    }
  }
  if (out.requires_grad()) {
    Node<T>* o = out.node().get();
    Node<T>* xn = x.node().get();
    o->backward = [=]() {
      auto dx = xn->EnsureGrad();
      for (std::size_t n = 0; n < B; ++n) {
        for (std::size_t c = 0; c < C; ++c) {
          for (std::size_t t = 0; t < To; ++t) {
            dx[(n * C + c) * T_ + index[n][t]] += o->grad[(n * C + c) * To + t];
          }
        }
      }
    };
  }
  return out;
}

template <typename T>
BasicTensor<T> ConcatFeatures(std::span<const BasicTensor<T>> parts) {
  if (parts.empty()) throw InvalidArgument("concat_features: nothing to concatenate");
  const std::size_t B = parts[0].dim(0);
  std::size_t F = 0;
  for (const auto& p : parts) {
    RequireRank(p, 2, "concat_features");
    if (p.dim(0) != B) throw InvalidArgument("concat_features: batch sizes differ");
    F += p.dim(1);
  }
  auto out = BasicTensor<T>::Zeros({B, F});
  std::vector<Node<T>*> nodes;
  bool any = false;
  for (const auto& p : parts) {
    nodes.push_back(p.node().get());
    any = any || p.requires_grad();
  }
  if (GradMode::enabled() && any) {
    out.node()->requires_grad = true;
    for (const auto& p : parts) out.node()->parents.push_back(p.node());
  }
  auto yd = out.data();
  std::size_t offset = 0;
  for (const auto& p : parts) {
    const std::size_t f = p.dim(1);
    for (std::size_t n = 0; n < B; ++n) {
      std::copy_n(p.data().data() + n * f, f, yd.data() + n * F + offset);
    }
    offset += f;
  }
  if (out.requires_grad()) {
    Node<T>* o = out.node().get();
    o->backward = [=]() {
      std::size_t off = 0;
      for (Node<T>* p : nodes) {
        const std::size_t f = p->shape[1];
        if (Wants(p)) {
          auto dp = p->EnsureGrad();
          for (std::size_t n = 0; n < B; ++n) {
            for (std::size_t i = 0; i < f; ++i) dp[n * f + i] += o->grad[n * F + off + i];
          }
        }
        off += f;
      }
    };
  }
  return out;
}

template <typename T>
BasicTensor<T> CrossEntropy(const BasicTensor<T>& logits, std::span<const std::size_t> labels) {
  RequireRank(logits, 2, "cross_entropy logits");
  const std::size_t B = logits.dim(0), K = logits.dim(1);
  if (labels.size() != B) throw InvalidArgument("cross_entropy: one label per batch item");
  if (B == 0) throw InvalidArgument("cross_entropy: empty batch");
  for (std::size_t l : labels) {
    if (l >= K) {
      throw InvalidArgument("cross_entropy: label " + std::to_string(l) + " out of range [0, " +
                            std::to_string(K) + ")");
    }
  }
  auto out = MakeOutput<T>({1}, {&logits});
  auto z = logits.data();
  std::vector<double> probs(B * K);
  double loss = 0.0;
  for (std::size_t n = 0; n < B; ++n) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k) mx = std::max<double>(mx, z[n * K + k]);
    double sum = 0.0;
    for (std::size_t k = 0; k < K; ++k) sum += std::exp(z[n * K + k] - mx);
    const double lse = mx + std::log(sum);
    loss += lse - z[n * K + labels[n]];
    for (std::size_t k = 0; k < K; ++k) probs[n * K + k] = std::exp(z[n * K + k] - lse);
  }
  out.data()[0] = static_cast<T>(loss / static_cast<double>(B));
  if (out.requires_grad()) {
    Node<T>* o = out.node().get();
    Node<T>* zn = logits.node().get();
    std::vector<std::size_t> lab(labels.begin(), labels.end());
    o->backward = [=, probs = std::move(probs), lab = std::move(lab)]() {
      auto dz = zn->EnsureGrad();
      const double scale = static_cast<double>(o->grad[0]) / static_cast<double>(B);
      for (std::size_t n = 0; n < B; ++n) {
        for (std::size_t k = 0; k < K; ++k) {
          const double target = k == lab[n] ? 1.0 : 0.0;
          dz[n * K + k] += static_cast<T>(scale * (probs[n * K + k] - target));
        }
      }
    };
  }
  return out;
}

std::vector<double> SoftmaxRow(std::span<const float> logits) {
  std::vector<double> p(logits.size());
  if (logits.empty()) return p;
  double mx = -std::numeric_limits<double>::infinity();
  for (float v : logits) mx = std::max<double>(mx, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - mx);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

#define SPOOFPRINT_INSTANTIATE_OPS(T)                                                          \
  template BasicTensor<T> Conv1d(const BasicTensor<T>&, const BasicTensor<T>&,                 \
                                 const BasicTensor<T>&, std::size_t, std::size_t, Execution);  \
  template BasicTensor<T> Relu(const BasicTensor<T>&);                                         \
  template BasicTensor<T> Dropout(const BasicTensor<T>&, double, bool, Generator*);            \
  template BasicTensor<T> LayerNormChannels(const BasicTensor<T>&, const BasicTensor<T>&,      \
                                            const BasicTensor<T>&, double);                    \
  template BasicTensor<T> SoftmaxOverTime(const BasicTensor<T>&, std::span<const std::size_t>); \
  template BasicTensor<T> AttentiveStats(const BasicTensor<T>&, const BasicTensor<T>&,         \
                                         std::span<const std::size_t>);                        \
  template BasicTensor<T> Linear(const BasicTensor<T>&, const BasicTensor<T>&,                 \
                                 const BasicTensor<T>&);                                       \
  template BasicTensor<T> ConcatChannels(const BasicTensor<T>&, const BasicTensor<T>&);        \
  template BasicTensor<T> GatherTime(const BasicTensor<T>&,                                    \
                                     const std::vector<std::vector<std::size_t>>&);            \
  template BasicTensor<T> ConcatFeatures(std::span<const BasicTensor<T>>);                     \
  template BasicTensor<T> CrossEntropy(const BasicTensor<T>&, std::span<const std::size_t>);

SPOOFPRINT_INSTANTIATE_OPS(float)
SPOOFPRINT_INSTANTIATE_OPS(double)

#undef SPOOFPRINT_INSTANTIATE_OPS

}  // namespace spoofprint::nn
