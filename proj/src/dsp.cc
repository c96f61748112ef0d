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

#include "spoofprint/dsp.h"

#include <cmath>
#include <numbers>

#include "spoofprint/errors.h"

namespace spoofprint {

std::string WindowName(WindowType type) {
  switch (type) {
    case WindowType::kRectangular: return "rectangular";
    case WindowType::kHann: return "hann";
    case WindowType::kHamming: return "hamming";
  }
  return "unknown";
}

WindowType ParseWindow(const std::string& name) {
  if (name == "rectangular") return WindowType::kRectangular;
  if (name == "hann") return WindowType::kHann;
  if (name == "hamming") return WindowType::kHamming;
  throw InvalidArgument("unknown window type '" + name + "'");
}

std::vector<double> MakeWindow(WindowType type, std::size_t length) {
  std::vector<double> w(length, 1.0);
  const double two_pi = 2.0 * std::numbers::pi;
  switch (type) {
    case WindowType::kRectangular:
      break;
    case WindowType::kHann:
      for (std::size_t n = 0; n < length; ++n) {
        w[n] = 0.5 - 0.5 * std::cos(two_pi * n / static_cast<double>(length));
      }
      break;
    case WindowType::kHamming:
      if (length > 1) {
        for (std::size_t n = 0; n < length; ++n) {
          w[n] = 0.54 - 0.46 * std::cos(two_pi * n / static_cast<double>(length - 1));
        }
      }
      break;
  }
  return w;
}

std::size_t FrameGrid::NumFrames(std::size_t signal_length) const {
  if (signal_length < frame_length) return 0;
  return (signal_length - frame_length) / hop_length + 1;
}

void FrameGrid::Validate() const {
  if (hop_length < 1) throw InvalidArgument("hop_length must be >= 1");
  if (frame_length < hop_length) {
    throw InvalidArgument("frame_length must be >= hop_length");
  }
}

Matrix FrameSignal(std::span<const double> samples, const FrameGrid& grid) {
  grid.Validate();
  const std::size_t n_frames = grid.NumFrames(samples.size());
  const auto window = MakeWindow(grid.window, grid.frame_length);
  Matrix frames(n_frames, grid.frame_length);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const double* src = samples.data() + i * grid.hop_length;
    auto dst = frames.row(i);
    for (std::size_t j = 0; j < grid.frame_length; ++j) dst[j] = src[j] * window[j];
  }
  return frames;
}

FftPlan::FftPlan(std::size_t n_fft) : n_(n_fft), radix2_(false) {
  if (n_fft == 0) throw InvalidArgument("n_fft must be positive");
  radix2_ = (n_fft & (n_fft - 1)) == 0;
  const double two_pi = 2.0 * std::numbers::pi;
  if (radix2_) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n_) ++bits;
    bitrev_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
      bitrev_[i] = r;
    }
    twiddle_.resize(n_ / 2);
    for (std::size_t k = 0; k < n_ / 2; ++k) {
      const double angle = -two_pi * k / static_cast<double>(n_);
      twiddle_[k] = {std::cos(angle), std::sin(angle)};
    }
  } else {
    twiddle_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const double angle = -two_pi * k / static_cast<double>(n_);
      twiddle_[k] = {std::cos(angle), std::sin(angle)};
    }
  }
}

void FftPlan::Forward(std::span<const double> x,
                      std::span<std::complex<double>> out) const {
  if (x.size() > n_) {
    throw InvalidArgument("input length " + std::to_string(x.size()) +
                          " exceeds n_fft " + std::to_string(n_));
  }
  if (out.size() != n_) throw InvalidArgument("output buffer has wrong size");
  if (!radix2_) {
    for (std::size_t k = 0; k < n_; ++k) {
      std::complex<double> acc = 0.0;
      for (std::size_t n = 0; n < x.size(); ++n) acc += x[n] * twiddle_[(k * n) % n_];
      out[k] = acc;
    }
    return;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t src = bitrev_[i];
    out[i] = src < x.size() ? x[src] : 0.0;
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::complex<double> t = twiddle_[j * step] * out[start + j + half];
        const std::complex<double> u = out[start + j];
        out[start + j] = u + t;
        out[start + j + half] = u - t;
      }
    }
  }
}

std::vector<std::complex<double>> FftPlan::Forward(std::span<const double> x) const {
  std::vector<std::complex<double>> out(n_);
  Forward(x, out);
  return out;
}

void FftPlan::PowerSpectrum(std::span<const double> x, std::span<double> out,
                            std::span<std::complex<double>> scratch) const {
  Forward(x, scratch);
  for (std::size_t k = 0; k <= n_ / 2 && k < out.size(); ++k) {
    out[k] = std::norm(scratch[k]);
  }
}

std::vector<std::complex<double>> Dft(std::span<const double> x, std::size_t n_fft) {
  return FftPlan(n_fft).Forward(x);
}

std::vector<double> Autocorrelation(std::span<const double> x, std::size_t max_lag) {
  if (max_lag >= x.size()) {
    throw InvalidArgument("max_lag " + std::to_string(max_lag) +
                          " must be smaller than the signal length " +
                          std::to_string(x.size()));
  }
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double acc = 0.0;
    for (std::size_t n = 0; n + k < x.size(); ++n) acc += x[n] * x[n + k];
    r[k] = acc;
  }
  return r;
}

}  // namespace spoofprint
