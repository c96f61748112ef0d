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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spoofprint/dsp.h"
#include "spoofprint/errors.h"
#include "test_util.h"

namespace spoofprint {
namespace {

TEST(FrameSignal, SingleRectangularFrameEqualsSignal) {
  std::vector<double> x(400);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.01 * static_cast<double>(i));
  const Matrix m = FrameSignal(x, {400, 160, WindowType::kRectangular});
  ASSERT_EQ(m.rows(), 1u);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(m(0, i), x[i]);
}

TEST(FrameSignal, SecondFrameStartsAtHop) {
  std::vector<double> x(560);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
  const FrameGrid grid{400, 160, WindowType::kRectangular};
  EXPECT_EQ(grid.NumFrames(560), 2u);
  const Matrix m = FrameSignal(x, grid);
  ASSERT_EQ(m.rows(), 2u);
  EXPECT_EQ(m(1, 0), 160.0);
  EXPECT_EQ(m(1, 399), 559.0);
}

TEST(FrameSignal, ConstantSignalGivesWindow) {
  const std::vector<double> x(900, 1.0);
  const FrameGrid grid{400, 160, WindowType::kHann};
  const Matrix m = FrameSignal(x, grid);
  const auto w = MakeWindow(WindowType::kHann, 400);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < 400; ++c) EXPECT_EQ(m(r, c), w[c]);
  }
}

TEST(FrameSignal, ShortSignalHasNoFrames) {
  EXPECT_EQ(FrameSignal(std::vector<double>(399, 1.0), {400, 160}).rows(), 0u);
}

TEST(FrameGrid, RejectsZeroHop) {
  EXPECT_THROW((FrameGrid{400, 0}).Validate(), InvalidArgument);
}

TEST(Window, ClosedForms) {
  const auto hann = MakeWindow(WindowType::kHann, 8);
  const auto hamming = MakeWindow(WindowType::kHamming, 9);
  for (std::size_t n = 0; n < 8; ++n) {
    EXPECT_NEAR(hann[n], 0.5 - 0.5 * std::cos(2 * std::numbers::pi * n / 8.0), 1e-15);
  }
  for (std::size_t n = 0; n < 9; ++n) {
    EXPECT_NEAR(hamming[n], 0.54 - 0.46 * std::cos(2 * std::numbers::pi * n / 8.0), 1e-15);
  }
  EXPECT_EQ(ParseWindow(WindowName(WindowType::kHamming)), WindowType::kHamming);
}

TEST(Fft, ImpulseIsFlat) {
  const std::vector<double> x = {1, 0, 0, 0, 0, 0, 0, 0};
  for (const auto& v : FftPlan(8).Forward(x)) {
    EXPECT_NEAR(v.real(), 1.0, 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
  }
}

TEST(Fft, ZerosGiveZeros) {
  for (const auto& v : FftPlan(16).Forward(std::vector<double>(16, 0.0))) {
    EXPECT_EQ(std::abs(v), 0.0);
  }
}

TEST(Fft, CosineHasTwoBins) {
  const std::size_t N = 64, k0 = 5;
  std::vector<double> x(N);
  for (std::size_t n = 0; n < N; ++n) x[n] = std::cos(2 * std::numbers::pi * k0 * n / N);
  const auto X = FftPlan(N).Forward(x);
  for (std::size_t k = 0; k < N; ++k) {
    const double expect = (k == k0 || k == N - k0) ? N / 2.0 : 0.0;
    EXPECT_NEAR(std::abs(X[k]), expect, 1e-9);
  }
}

// Radix-2 and fallback paths against the textbook sum.
TEST(Fft, MatchesDirectSumOracle) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (std::size_t n : {1u, 2u, 8u, 12u, 64u, 100u, 512u}) {
    std::vector<double> x(n);
    for (double& v : x) v = g(rng);
    const auto fast = FftPlan(n).Forward(x);
    const auto slow = testing_util::DirectDft(x);
    const auto lib = Dft(x, n);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_LE(std::abs(fast[k] - slow[k]), 1e-9) << "n=" << n << " k=" << k;
      EXPECT_LE(std::abs(lib[k] - slow[k]), 1e-9);
    }
  }
}

TEST(Fft, ZeroPadsAndRejectsLongInput) {
  const FftPlan plan(8);
  const std::vector<double> x = {1, 2, 3};
  const auto X = plan.Forward(x);
  const auto oracle = testing_util::DirectDft({1, 2, 3, 0, 0, 0, 0, 0});
  for (std::size_t k = 0; k < 8; ++k) EXPECT_LE(std::abs(X[k] - oracle[k]), 1e-12);
  EXPECT_THROW(plan.Forward(std::vector<double>(9, 0.0)), InvalidArgument);
}

TEST(Fft, PowerSpectrumHalfBins) {
  std::vector<double> x(16);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.3 * static_cast<double>(i));
  const FftPlan plan(16);
  std::vector<double> power(9);
  std::vector<std::complex<double>> scratch(16);
  plan.PowerSpectrum(x, power, scratch);
  const auto X = testing_util::DirectDft(x);
  for (std::size_t k = 0; k <= 8; ++k) EXPECT_NEAR(power[k], std::norm(X[k]), 1e-10);
}

TEST(Autocorrelation, HandExamples) {
  const auto a = Autocorrelation(std::vector<double>{1, 0, 0, 0}, 2);
  EXPECT_EQ(a, (std::vector<double>{1, 0, 0}));
  const auto b = Autocorrelation(std::vector<double>{1, 1}, 1);
  EXPECT_EQ(b, (std::vector<double>{2, 1}));
  EXPECT_THROW(Autocorrelation(std::vector<double>{1, 1}, 2), InvalidArgument);
}

}  // namespace
}  // namespace spoofprint
