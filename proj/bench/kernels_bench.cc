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

// Serial reference vs OpenMP kernels. The second argument selects the
// execution mode: 0 serial, 1 parallel.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "spoofprint/features.h"
#include "spoofprint/lp.h"
#include "spoofprint/nn/kernels.h"

namespace {

using spoofprint::Execution;

Execution Mode(const benchmark::State& state) {
  return state.range(1) ? Execution::kParallel : Execution::kSerial;
}

std::vector<float> RandomFloats(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> g;
  std::vector<float> v(n);
  for (float& x : v) x = g(rng);
  return v;
}

spoofprint::Waveform Speechlike(std::size_t n) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  spoofprint::Waveform w;
  w.samples.resize(n);
  double prev = 0.0;
  for (double& v : w.samples) v = prev = 0.9 * prev + 0.05 * g(rng);
  return w;
}

// Hidden-layer shape: 128 channels, kernel 3, batch 16; range(0) frames.
spoofprint::nn::Conv1dShape HiddenShape(std::size_t time) {
  spoofprint::nn::Conv1dShape s;
  s.batch = 16;
  s.in_channels = 128;
  s.out_channels = 128;
  s.kernel = 3;
  s.time = time;
  return s;
}

void BM_Conv1dForward(benchmark::State& state) {
  const auto s = HiddenShape(static_cast<std::size_t>(state.range(0)));
  const auto x = RandomFloats(s.batch * s.in_channels * s.time, 1);
  const auto w = RandomFloats(s.out_channels * s.in_channels * s.kernel, 2);
  const auto b = RandomFloats(s.out_channels, 3);
  std::vector<float> y(s.batch * s.out_channels * s.OutputTime());
  for (auto _ : state) {
    spoofprint::nn::Conv1dForward(s, x.data(), w.data(), b.data(), y.data(), Mode(state));
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_Conv1dForward)->ArgsProduct({{100, 400}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Conv1dBackward(benchmark::State& state) {
  const auto s = HiddenShape(static_cast<std::size_t>(state.range(0)));
  const auto x = RandomFloats(s.batch * s.in_channels * s.time, 1);
  const auto w = RandomFloats(s.out_channels * s.in_channels * s.kernel, 2);
  const auto dy = RandomFloats(s.batch * s.out_channels * s.OutputTime(), 4);
  std::vector<float> dx(x.size()), dw(w.size()), db(s.out_channels);
  for (auto _ : state) {
    spoofprint::nn::Conv1dBackward(s, x.data(), w.data(), dy.data(), dx.data(), dw.data(),
                                   db.data(), Mode(state));
    benchmark::DoNotOptimize(dw.data());
  }
}
BENCHMARK(BM_Conv1dBackward)->ArgsProduct({{100, 400}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_LogMel(benchmark::State& state) {
  const auto w = Speechlike(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spoofprint::LogMelEnergies(w, {}, Mode(state)));
  }
}
BENCHMARK(BM_LogMel)->ArgsProduct({{16000, 64000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_LpResidual(benchmark::State& state) {
  const auto w = Speechlike(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spoofprint::LpResidual(w, 23, 400, 160, Mode(state)));
  }
}
BENCHMARK(BM_LpResidual)->ArgsProduct({{16000, 64000}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
