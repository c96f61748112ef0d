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

#ifndef SPOOFPRINT_DSP_H_
#define SPOOFPRINT_DSP_H_

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spoofprint/wav.h"

namespace spoofprint {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class WindowType { kRectangular, kHann, kHamming };

std::string WindowName(WindowType type);
WindowType ParseWindow(const std::string& name);

// Hann is the periodic form 0.5 - 0.5 cos(2 pi n / N) used by mel front ends;
// Hamming is the symmetric form 0.54 - 0.46 cos(2 pi n / (N - 1)) used for
// LP analysis.
std::vector<double> MakeWindow(WindowType type, std::size_t length);

struct FrameGrid {
  std::size_t frame_length = 400;
  std::size_t hop_length = 160;
  WindowType window = WindowType::kHann;

  // floor((n - frame) / hop) + 1 when n >= frame, else 0.
  std::size_t NumFrames(std::size_t signal_length) const;
  void Validate() const;
};

// Row i holds samples[i*hop, i*hop + frame) times the window. A trailing
// partial frame is dropped, so a signal shorter than one frame gives an empty
// matrix.
Matrix FrameSignal(std::span<const double> samples, const FrameGrid& grid);
inline Matrix FrameSignal(const Waveform& w, const FrameGrid& grid) {
  return FrameSignal(w.samples, grid);
}

// Precomputed transform of a fixed size. Power-of-two sizes use an iterative
// radix-2 FFT; any other size falls back to the direct O(n^2) sum. Immutable
// after construction, so one plan can be shared across threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n_fft);

  std::size_t size() const { return n_; }

  // x is zero-padded to size(); length(x) > size() is an error.
  std::vector<std::complex<double>> Forward(std::span<const double> x) const;
  // In-place variant over a caller-owned buffer of length size().
  void Forward(std::span<const double> x,
               std::span<std::complex<double>> out) const;
  // |X[k]|^2 for k = 0 .. n/2.
  void PowerSpectrum(std::span<const double> x, std::span<double> out,
                     std::span<std::complex<double>> scratch) const;

 private:
  std::size_t n_;
  bool radix2_;
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> twiddle_;
};

// X[k] = sum_n x[n] exp(-j 2 pi k n / n_fft), x zero-padded to n_fft.
std::vector<std::complex<double>> Dft(std::span<const double> x,
                                      std::size_t n_fft);

// Biased (unnormalized) autocorrelation r[k] = sum_n x[n] x[n+k],
// k = 0 .. max_lag. Requires max_lag < length(x).
std::vector<double> Autocorrelation(std::span<const double> x,
                                    std::size_t max_lag);

}  // namespace spoofprint

#endif  // SPOOFPRINT_DSP_H_
