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

#include "spoofprint/lp.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "spoofprint/errors.h"

namespace spoofprint {
namespace {

// Tiny white-noise correction on r[0]; keeps near-singular frames (pure tones,
// digital silence with dither) strictly positive definite in floating point.
constexpr double kWhiteNoiseCorrection = 1e-9;

LpResult ZeroModel(std::size_t order) {
  LpResult out;
  out.order = order;
  out.coeffs.assign(order, 0.0);
  out.reflection.assign(order, 0.0);
  out.gain = 0.0;
  return out;
}

}  // namespace

std::size_t DefaultLpOrder(int sample_rate) {
  if (sample_rate < 1000) {
    throw InvalidArgument("sample rate must be at least 1000 Hz");
  }
  auto order = static_cast<std::size_t>(std::ceil(4.0 + sample_rate / 1000.0));
  if (order % 2 == 0) ++order;
  return order;
}

LpResult LevinsonDurbin(std::span<const double> r, std::size_t order) {
  if (r.size() < order + 1) {
    throw InvalidArgument("autocorrelation has " + std::to_string(r.size()) +
                          " lags, order " + std::to_string(order) + " needs " +
                          std::to_string(order + 1));
  }
  if (!(r[0] > 0.0)) throw InvalidArgument("r[0] must be positive");

  LpResult out;
  out.order = order;
  out.coeffs.assign(order, 0.0);
  out.reflection.assign(order, 0.0);
  std::vector<double> prev(order, 0.0);
  double error = r[0];
  for (std::size_t i = 0; i < order; ++i) {
    double acc = r[i + 1];
    for (std::size_t j = 0; j < i; ++j) acc -= out.coeffs[j] * r[i - j];
    const double k = acc / error;
    if (!std::isfinite(k) || std::abs(k) >= 1.0) {
      throw NumericalError("reflection coefficient " + std::to_string(k) +
                           " at stage " + std::to_string(i + 1) +
                           " is outside (-1, 1)");
    }
    out.reflection[i] = k;
    prev.assign(out.coeffs.begin(), out.coeffs.begin() + i);
    out.coeffs[i] = k;
    for (std::size_t j = 0; j < i; ++j) out.coeffs[j] = prev[j] - k * prev[i - 1 - j];
    error *= (1.0 - k * k);
  }
  out.gain = std::sqrt(std::max(error, 0.0));
  return out;
}

void InverseFilter(std::span<const double> signal, std::span<const double> coeffs,
                   std::size_t begin, std::size_t end, std::span<double> out) {
  const std::size_t order = coeffs.size();
  for (std::size_t n = begin; n < end; ++n) {
    double acc = signal[n];
    const std::size_t taps = std::min(order, n);
    for (std::size_t k = 1; k <= taps; ++k) acc -= coeffs[k - 1] * signal[n - k];
    out[n] = acc;
  }
}

std::vector<LpResult> FrameLpAnalysis(const Waveform& wave, std::size_t order,
                                      const FrameGrid& grid, Execution exec) {
  grid.Validate();
  if (order >= grid.frame_length) {
    throw InvalidArgument("LP order must be smaller than the frame length");
  }
  const std::size_t n_frames = grid.NumFrames(wave.size());
  const auto window = MakeWindow(grid.window, grid.frame_length);
  std::vector<LpResult> models(n_frames);
  const auto n = static_cast<long>(n_frames);

  auto analyze = [&](long i) {
    std::vector<double> frame(grid.frame_length);
    const double* src = wave.samples.data() + static_cast<std::size_t>(i) * grid.hop_length;
    for (std::size_t j = 0; j < grid.frame_length; ++j) frame[j] = src[j] * window[j];
    auto r = Autocorrelation(frame, order);
    if (r[0] <= 0.0) {
      models[i] = ZeroModel(order);
      return;
    }
    r[0] *= 1.0 + kWhiteNoiseCorrection;
    models[i] = LevinsonDurbin(r, order);
  };

  if (exec == Execution::kSerial) {
    for (long i = 0; i < n; ++i) analyze(i);
    return models;
  }
  // Exceptions cannot cross the parallel region; collect the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      analyze(i);
    } catch (...) {
#pragma omp critical(spoofprint_lp_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return models;
}

ResidualSignal LpResidual(const Waveform& wave, std::size_t order,
                          std::size_t frame_length, std::size_t hop_length,
                          Execution exec) {
  FrameGrid grid{frame_length, hop_length, WindowType::kHamming};
  grid.Validate();
  if (wave.size() < frame_length) {
    throw DataError("signal of " + std::to_string(wave.size()) +
                    " samples is shorter than one LP frame (" +
                    std::to_string(frame_length) + ")");
  }
  const auto models = FrameLpAnalysis(wave, order, grid, exec);
  const std::size_t n_frames = models.size();
  const std::size_t offset = (frame_length - hop_length) / 2;

  ResidualSignal out;
  out.sample_rate = wave.sample_rate;
  out.frame_grid = grid;
  out.order = order;
  out.samples.assign(wave.size(), 0.0);

  auto segment = [&](long i) {
    const auto f = static_cast<std::size_t>(i);
    const std::size_t begin = f == 0 ? 0 : f * hop_length + offset;
    const std::size_t end =
        f + 1 == n_frames ? wave.size() : f * hop_length + offset + hop_length;
    InverseFilter(wave.samples, models[f].coeffs, begin, end, out.samples);
  };
  const auto n = static_cast<long>(n_frames);
  if (exec == Execution::kSerial) {
    for (long i = 0; i < n; ++i) segment(i);
  } else {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) segment(i);
  }
  return out;
}

}  // namespace spoofprint
