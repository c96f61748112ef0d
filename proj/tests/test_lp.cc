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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "spoofprint/errors.h"
#include "spoofprint/lp.h"
#include "test_util.h"

namespace spoofprint {
namespace {

using testing_util::AllPoleFilter;
using testing_util::NormalEquationLp;
using testing_util::NormalizedCrossCorrelation;
using testing_util::RandomStableAr;

TEST(DefaultLpOrder, OddOrderRule) {
  EXPECT_EQ(DefaultLpOrder(16000), 21u);
  EXPECT_EQ(DefaultLpOrder(8000), 13u);
  EXPECT_EQ(DefaultLpOrder(1000), 5u);
  EXPECT_EQ(kExperimentLpOrder, 23u);
}

TEST(LevinsonDurbin, FirstOrderByHand) {
  const std::vector<double> r = {1.0, 0.9};
  const LpResult lp = LevinsonDurbin(r, 1);
  ASSERT_EQ(lp.coeffs.size(), 1u);
  EXPECT_NEAR(lp.coeffs[0], 0.9, 1e-15);
  EXPECT_NEAR(lp.gain, std::sqrt(1.0 - 0.81), 1e-15);
}

TEST(LevinsonDurbin, OrderZero) {
  const std::vector<double> r = {4.0};
  const LpResult lp = LevinsonDurbin(r, 0);
  EXPECT_TRUE(lp.coeffs.empty());
  EXPECT_DOUBLE_EQ(lp.gain, 2.0);
}

TEST(LevinsonDurbin, RejectsBadInput) {
  EXPECT_THROW(LevinsonDurbin(std::vector<double>{0.0, 0.0}, 1), InvalidArgument);
  EXPECT_THROW(LevinsonDurbin(std::vector<double>{1.0}, 2), InvalidArgument);
  // |r[1]| = r[0] puts the reflection coefficient on the unit circle.
  EXPECT_THROW(LevinsonDurbin(std::vector<double>{1.0, 1.0, 1.0}, 2), NumericalError);
}

// AR(2) with poles 0.9 exp(+-j pi/5): the analytic autocorrelation follows
// the Yule-Walker recursion r[k] = a1 r[k-1] + a2 r[k-2].
TEST(LevinsonDurbin, RecoversAr2FromAnalyticAutocorrelation) {
  const double rho = 0.9, th = std::numbers::pi / 5;
  const double a1 = 2 * rho * std::cos(th), a2 = -rho * rho;
  std::vector<double> r(3);
  r[0] = 1.0;
  r[1] = a1 / (1.0 - a2);
  r[2] = a1 * r[1] + a2 * r[0];
  const LpResult lp = LevinsonDurbin(r, 2);
  EXPECT_NEAR(lp.coeffs[0], a1, 1e-6);
  EXPECT_NEAR(lp.coeffs[1], a2, 1e-6);
}

TEST(LevinsonDurbin, MatchesNormalEquationsOnRandomAr) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t order = 1 + static_cast<std::size_t>(trial) % 23;
    const auto a = RandomStableAr(order, rng);
    std::vector<double> e(4000);
    for (double& v : e) v = g(rng);
    const auto s = AllPoleFilter(a, e);
    const auto r = Autocorrelation(s, order);
    const LpResult lp = LevinsonDurbin(r, order);
    const auto oracle = NormalEquationLp(r, order);
    for (std::size_t k = 0; k < order; ++k) {
      EXPECT_NEAR(lp.coeffs[k], oracle[k], 1e-6) << "trial " << trial << " k " << k;
    }
    for (double k : lp.reflection) EXPECT_LT(std::abs(k), 1.0);
  }
}

TEST(InverseFilter, UndoesAllPoleFilter) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const auto a = RandomStableAr(8, rng);
  std::vector<double> e(500);
  for (double& v : e) v = g(rng);
  const auto s = AllPoleFilter(a, e);
  std::vector<double> out(s.size());
  InverseFilter(s, a, 0, s.size(), out);
  for (std::size_t n = 0; n < s.size(); ++n) EXPECT_NEAR(out[n], e[n], 1e-9);
}

class ResidualRecovery : public ::testing::TestWithParam<std::size_t> {};

// Stationary AR input, so a 200 ms analysis frame applies.
TEST_P(ResidualRecovery, WhiteNoiseExcitation) {
  const std::size_t order = GetParam();
  std::mt19937_64 rng(100 + order);
  std::normal_distribution<double> g;
  const auto a = RandomStableAr(order, rng, 0.9);
  std::vector<double> e(32000);
  for (double& v : e) v = g(rng);
  Waveform w;
  w.samples = AllPoleFilter(a, e);
  const ResidualSignal res = LpResidual(w, order, 3200, 800);
  ASSERT_EQ(res.samples.size(), w.samples.size());
  EXPECT_EQ(res.order, order);
  EXPECT_GT(NormalizedCrossCorrelation(res.samples, e, 3200, e.size() - 3200), 0.99);
}

// With 25 ms frames the per-frame estimate of K coefficients leaves an excess
// error near K / N_eff, which bounds the correlation around 0.95.
TEST_P(ResidualRecovery, ShortFramesNearEstimationBound) {
  const std::size_t order = GetParam();
  std::mt19937_64 rng(100 + order);
  std::normal_distribution<double> g;
  const auto a = RandomStableAr(order, rng, 0.9);
  std::vector<double> e(32000);
  for (double& v : e) v = g(rng);
  Waveform w;
  w.samples = AllPoleFilter(a, e);
  const ResidualSignal res = LpResidual(w, order);
  EXPECT_GT(NormalizedCrossCorrelation(res.samples, e, 400, e.size() - 400), 0.94);
}

INSTANTIATE_TEST_SUITE_P(Orders, ResidualRecovery, ::testing::Values(21u, 23u));

TEST(LpResidual, ImpulseTrainPeaksPreserved) {
  std::mt19937_64 rng(5);
  const auto a = RandomStableAr(10, rng, 0.9);
  std::vector<double> e(8000, 0.0);
  std::vector<std::size_t> truth;
  for (std::size_t n = 50; n < e.size(); n += 100) {
    e[n] = 1.0;
    truth.push_back(n);
  }
  Waveform w;
  w.samples = AllPoleFilter(a, e);
  const ResidualSignal res = LpResidual(w, 10);
  // The largest magnitude within each period sits on the excitation.
  for (std::size_t t : truth) {
    if (t < 400 || t + 100 > e.size()) continue;
    std::size_t best = t - 50;
    for (std::size_t n = t - 50; n < t + 50; ++n) {
      if (std::abs(res.samples[n]) > std::abs(res.samples[best])) best = n;
    }
    EXPECT_EQ(best, t);
  }
}

TEST(LpResidual, ZeroInputGivesZeroResidual) {
  Waveform w;
  w.samples.assign(4000, 0.0);
  const ResidualSignal res = LpResidual(w, 23);
  for (double v : res.samples) EXPECT_EQ(v, 0.0);
}

TEST(LpResidual, SilentStretchStaysZero) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  Waveform w;
  w.samples.assign(6000, 0.0);
  for (std::size_t n = 3000; n < 6000; ++n) w.samples[n] = g(rng);
  const ResidualSignal res = LpResidual(w, 12);
  for (std::size_t n = 0; n < 2400; ++n) EXPECT_EQ(res.samples[n], 0.0);
}

TEST(LpResidual, SerialAndParallelAgree) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Waveform w;
  w.samples.resize(9000);
  for (double& v : w.samples) v = g(rng);
  const auto a = LpResidual(w, 23, 400, 160, Execution::kSerial);
  const auto b = LpResidual(w, 23, 400, 160, Execution::kParallel);
  EXPECT_EQ(a.samples, b.samples);
}

TEST(LpResidual, Whitens) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  const auto a = RandomStableAr(16, rng, 0.95);
  std::vector<double> e(16000);
  for (double& v : e) v = g(rng);
  Waveform w;
  w.samples = AllPoleFilter(a, e);
  const ResidualSignal res = LpResidual(w, 23);
  EXPECT_LT(testing_util::MeanAbsNormalizedAutocorrelation(res.samples, 400, 160, 23),
            testing_util::MeanAbsNormalizedAutocorrelation(w.samples, 400, 160, 23));
}

TEST(LpResidual, ScalesWithInput) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  const auto a = RandomStableAr(6, rng, 0.9);
  std::vector<double> e(5000);
  for (double& v : e) v = g(rng);
  Waveform w, w3;
  w.samples = AllPoleFilter(a, e);
  w3.samples = w.samples;
  for (double& v : w3.samples) v *= 3.0;
  const auto r1 = LpResidual(w, 23);
  const auto r3 = LpResidual(w3, 23);
  for (std::size_t n = 0; n < r1.samples.size(); ++n) {
    EXPECT_NEAR(r3.samples[n], 3.0 * r1.samples[n], 1e-9 * (1.0 + std::abs(r3.samples[n])));
  }
  const auto f1 = FrameLpAnalysis(w, 23, {400, 160, WindowType::kHamming});
  const auto f3 = FrameLpAnalysis(w3, 23, {400, 160, WindowType::kHamming});
  for (std::size_t i = 0; i < f1.size(); ++i) {
    for (std::size_t k = 0; k < 23; ++k) EXPECT_NEAR(f1[i].coeffs[k], f3[i].coeffs[k], 1e-9);
    for (double rc : f1[i].reflection) EXPECT_LT(std::abs(rc), 1.0);
  }
}

}  // namespace
}  // namespace spoofprint
