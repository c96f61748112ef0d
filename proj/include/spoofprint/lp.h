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

#ifndef SPOOFPRINT_LP_H_
#define SPOOFPRINT_LP_H_

#include <cstddef>
#include <span>
#include <vector>

#include "spoofprint/dsp.h"
#include "spoofprint/execution.h"
#include "spoofprint/wav.h"

namespace spoofprint {

// All-pole model V(z) = G / A(z), A(z) = 1 - sum_k a_k z^-k. coeffs[k-1]
// holds a_k, so the one-step prediction is s[n] ~ sum_k a_k s[n-k].
struct LpResult {
  std::vector<double> coeffs;
  std::vector<double> reflection;  // PARCOR coefficients, one per stage
  double gain = 0.0;
  std::size_t order = 0;
};

// Inverse-filtered excitation estimate. Covers the whole analyzed signal, so
// samples.size() equals the input length.
struct ResidualSignal {
  std::vector<double> samples;
  int sample_rate = 16000;
  FrameGrid frame_grid{400, 160, WindowType::kHamming};
  std::size_t order = 0;
};

// Order rule: ceil(4 + fs/1000), bumped to the next odd number so the model
// keeps at least one real pole. 16 kHz -> 21.
std::size_t DefaultLpOrder(int sample_rate);

// Order used by the experiments. Deliberately not DefaultLpOrder(16000).
inline constexpr std::size_t kExperimentLpOrder = 23;

// Solves the Yule-Walker equations from r[0..order]. Throws InvalidArgument
// when r[0] <= 0 or r is too short, NumericalError when a reflection
// coefficient reaches the unit circle.
LpResult LevinsonDurbin(std::span<const double> r, std::size_t order);

// Frame-wise LP analysis on Hamming-windowed frames, inverse filtering of the
// unwindowed signal. Frame i contributes the hop-length segment centered in
// its window (the first and last frames also cover the edges), and the FIR
// filter A(z) runs over true signal history, so segments join without
// overlap-add. Zero-energy frames produce a zero segment.
ResidualSignal LpResidual(const Waveform& wave, std::size_t order,
                          std::size_t frame_length = 400,
                          std::size_t hop_length = 160,
                          Execution exec = Execution::kParallel);

// FIR inverse filter e[n] = s[n] - sum_k a_k s[n-k] for n in [begin, end),
// with zeros before the start of the signal.
void InverseFilter(std::span<const double> signal, std::span<const double> coeffs,
                   std::size_t begin, std::size_t end, std::span<double> out);

// Per-frame LP coefficients used by LpResidual (exposed for diagnostics).
std::vector<LpResult> FrameLpAnalysis(const Waveform& wave, std::size_t order,
                                      const FrameGrid& grid,
                                      Execution exec = Execution::kParallel);

}  // namespace spoofprint

#endif  // SPOOFPRINT_LP_H_
