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

#include "spoofprint/nn/kernels.h"

#include <algorithm>
#include <vector>

namespace spoofprint::nn {
namespace {

// col[(c*K + k) * tout + t] = x[c, t*stride + k*dilation] for one batch item.
template <typename T>
void Im2Col(const Conv1dShape& s, const T* xb, T* col) {
  const std::size_t tout = s.OutputTime();
  for (std::size_t c = 0; c < s.in_channels; ++c) {
    const T* xc = xb + c * s.time;
    for (std::size_t k = 0; k < s.kernel; ++k) {
      T* dst = col + (c * s.kernel + k) * tout;
      const T* src = xc + k * s.dilation;
      for (std::size_t t = 0; t < tout; ++t) dst[t] = src[t * s.stride];
    }
  }
}

// colt[t * fan + (c*K + k)] = x[c, t*stride + k*dilation] for one batch item.
template <typename T>
void Im2ColTransposed(const Conv1dShape& s, const T* xb, T* colt) {
  const std::size_t tout = s.OutputTime();
  const std::size_t fan = s.in_channels * s.kernel;
  for (std::size_t c = 0; c < s.in_channels; ++c) {
    const T* xc = xb + c * s.time;
    for (std::size_t k = 0; k < s.kernel; ++k) {
      const std::size_t j = c * s.kernel + k;
      const T* src = xc + k * s.dilation;
      for (std::size_t t = 0; t < tout; ++t) colt[t * fan + j] = src[t * s.stride];
    }
  }
}

template <typename T>
void ForwardSerial(const Conv1dShape& s, const T* x, const T* w, const T* b, T* y) {
  const std::size_t tout = s.OutputTime();
  const std::size_t fan = s.in_channels * s.kernel;
  for (std::size_t n = 0; n < s.batch; ++n) {
    for (std::size_t o = 0; o < s.out_channels; ++o) {
      for (std::size_t t = 0; t < tout; ++t) {
        T acc(0);
        for (std::size_t c = 0; c < s.in_channels; ++c) {
          const T* xc = x + (n * s.in_channels + c) * s.time + t * s.stride;
          const T* wc = w + o * fan + c * s.kernel;
          for (std::size_t k = 0; k < s.kernel; ++k) acc += wc[k] * xc[k * s.dilation];
        }
        y[(n * s.out_channels + o) * tout + t] = acc + (b ? b[o] : T(0));
      }
    }
  }
}

template <typename T>
void ForwardParallel(const Conv1dShape& s, const T* x, const T* w, const T* b, T* y) {
  const std::size_t tout = s.OutputTime();
  const std::size_t fan = s.in_channels * s.kernel;
  std::vector<T> cols(s.batch * fan * tout);
#pragma omp parallel for schedule(static)
  for (std::size_t n = 0; n < s.batch; ++n) {
    Im2Col(s, x + n * s.in_channels * s.time, cols.data() + n * fan * tout);
  }
  const std::size_t jobs = s.batch * s.out_channels;
#pragma omp parallel for schedule(static)
  for (std::size_t job = 0; job < jobs; ++job) {
    const std::size_t n = job / s.out_channels;
    const std::size_t o = job % s.out_channels;
    const T* col = cols.data() + n * fan * tout;
    const T* wo = w + o * fan;
    T* yo = y + (n * s.out_channels + o) * tout;
    std::fill(yo, yo + tout, T(0));
    for (std::size_t j = 0; j < fan; ++j) {
      const T wj = wo[j];
      const T* cj = col + j * tout;
      for (std::size_t t = 0; t < tout; ++t) yo[t] += wj * cj[t];
    }
    const T bias = b ? b[o] : T(0);
    for (std::size_t t = 0; t < tout; ++t) yo[t] += bias;
  }
}

template <typename T>
void BackwardSerial(const Conv1dShape& s, const T* x, const T* w, const T* dy, T* dx, T* dw,
                    T* db) {
  const std::size_t tout = s.OutputTime();
  const std::size_t fan = s.in_channels * s.kernel;
  if (db) {
    for (std::size_t o = 0; o < s.out_channels; ++o) {
      T acc(0);
      for (std::size_t n = 0; n < s.batch; ++n) {
        const T* g = dy + (n * s.out_channels + o) * tout;
        for (std::size_t t = 0; t < tout; ++t) acc += g[t];
      }
      db[o] += acc;
    }
  }
  if (dw) {
    for (std::size_t o = 0; o < s.out_channels; ++o) {
      for (std::size_t c = 0; c < s.in_channels; ++c) {
        for (std::size_t k = 0; k < s.kernel; ++k) {
          T acc(0);
          for (std::size_t n = 0; n < s.batch; ++n) {
            const T* g = dy + (n * s.out_channels + o) * tout;
            const T* xc = x + (n * s.in_channels + c) * s.time + k * s.dilation;
            for (std::size_t t = 0; t < tout; ++t) acc += g[t] * xc[t * s.stride];
          }
          dw[o * fan + c * s.kernel + k] += acc;
        }
      }
    }
  }
  if (dx) {
    for (std::size_t n = 0; n < s.batch; ++n) {
      for (std::size_t c = 0; c < s.in_channels; ++c) {
        T* dxc = dx + (n * s.in_channels + c) * s.time;
        for (std::size_t k = 0; k < s.kernel; ++k) {
          for (std::size_t t = 0; t < tout; ++t) {
            T acc(0);
            for (std::size_t o = 0; o < s.out_channels; ++o) {
              acc += w[o * fan + c * s.kernel + k] * dy[(n * s.out_channels + o) * tout + t];
            }
            dxc[t * s.stride + k * s.dilation] += acc;
          }
        }
      }
    }
  }
}

template <typename T>
void BackwardParallel(const Conv1dShape& s, const T* x, const T* w, const T* dy, T* dx, T* dw,
                      T* db) {
  const std::size_t tout = s.OutputTime();
  const std::size_t fan = s.in_channels * s.kernel;
  if (dw || db) {
    std::vector<T> colt;
    if (dw) {
      colt.resize(s.batch * tout * fan);
#pragma omp parallel for schedule(static)
      for (std::size_t n = 0; n < s.batch; ++n) {
        Im2ColTransposed(s, x + n * s.in_channels * s.time, colt.data() + n * tout * fan);
      }
    }
#pragma omp parallel for schedule(static)
    for (std::size_t o = 0; o < s.out_channels; ++o) {
      if (db) {
        T acc(0);
        for (std::size_t n = 0; n < s.batch; ++n) {
          const T* g = dy + (n * s.out_channels + o) * tout;
          for (std::size_t t = 0; t < tout; ++t) acc += g[t];
        }
        db[o] += acc;
      }
      if (dw) {
        // Row update per time step: each weight sums over (n, t) in the
        // serial order.
        std::vector<T> acc(fan, T(0));
        for (std::size_t n = 0; n < s.batch; ++n) {
          const T* g = dy + (n * s.out_channels + o) * tout;
          const T* cn = colt.data() + n * tout * fan;
          for (std::size_t t = 0; t < tout; ++t) {
            const T gt = g[t];
            const T* row = cn + t * fan;
            for (std::size_t j = 0; j < fan; ++j) acc[j] += gt * row[j];
          }
        }
        T* dwo = dw + o * fan;
        for (std::size_t j = 0; j < fan; ++j) dwo[j] += acc[j];
      }
    }
  }
  if (dx) {
#pragma omp parallel for schedule(static)
    for (std::size_t n = 0; n < s.batch; ++n) {
      std::vector<T> dcol(fan * tout, T(0));
      for (std::size_t o = 0; o < s.out_channels; ++o) {
        const T* g = dy + (n * s.out_channels + o) * tout;
        for (std::size_t j = 0; j < fan; ++j) {
          const T wj = w[o * fan + j];
          T* dj = dcol.data() + j * tout;
          for (std::size_t t = 0; t < tout; ++t) dj[t] += wj * g[t];
        }
      }
      for (std::size_t c = 0; c < s.in_channels; ++c) {
        T* dxc = dx + (n * s.in_channels + c) * s.time;
        for (std::size_t k = 0; k < s.kernel; ++k) {
          const T* dj = dcol.data() + (c * s.kernel + k) * tout;
          T* dst = dxc + k * s.dilation;
          for (std::size_t t = 0; t < tout; ++t) dst[t * s.stride] += dj[t];
        }
      }
    }
  }
}

}  // namespace

template <typename T>
void Conv1dForward(const Conv1dShape& s, const T* x, const T* w, const T* b, T* y,
                   Execution exec) {
  if (exec == Execution::kSerial) {
    ForwardSerial(s, x, w, b, y);
  } else {
    ForwardParallel(s, x, w, b, y);
  }
}

template <typename T>
void Conv1dBackward(const Conv1dShape& s, const T* x, const T* w, const T* dy, T* dx, T* dw,
                    T* db, Execution exec) {
  if (exec == Execution::kSerial) {
    BackwardSerial(s, x, w, dy, dx, dw, db);
  } else {
    BackwardParallel(s, x, w, dy, dx, dw, db);
  }
}

template void Conv1dForward<float>(const Conv1dShape&, const float*, const float*, const float*,
                                   float*, Execution);
template void Conv1dForward<double>(const Conv1dShape&, const double*, const double*,
                                    const double*, double*, Execution);
template void Conv1dBackward<float>(const Conv1dShape&, const float*, const float*, const float*,
                                    float*, float*, float*, Execution);
template void Conv1dBackward<double>(const Conv1dShape&, const double*, const double*,
                                     const double*, double*, double*, double*, Execution);

}  // namespace spoofprint::nn
