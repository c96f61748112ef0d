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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spoofprint/errors.h"
#include "spoofprint/features.h"
#include "test_util.h"

namespace spoofprint {
namespace {

constexpr double kPi = std::numbers::pi;

Waveform Tone(double hz, double seconds, int fs = 16000, double amp = 0.5) {
  Waveform w;
  w.sample_rate = fs;
  w.samples.resize(static_cast<std::size_t>(seconds * fs));
  for (std::size_t n = 0; n < w.samples.size(); ++n) {
    w.samples[n] = amp * std::sin(2 * kPi * hz * static_cast<double>(n) / fs);
  }
  return w;
}

TEST(MelScale, RoundTripAndAnchors) {
  EXPECT_NEAR(HzToMel(0.0), 0.0, 1e-12);
  EXPECT_NEAR(HzToMel(700.0), 2595.0 * std::log10(2.0), 1e-9);
  for (double hz : {10.0, 440.0, 1000.0, 7999.0}) EXPECT_NEAR(MelToHz(HzToMel(hz)), hz, 1e-9);
}

TEST(MelFilterbank, ShapeAndCenters) {
  const MelFilterbank fb(80, 512, 16000);
  EXPECT_EQ(fb.num_mels(), 80u);
  EXPECT_EQ(fb.num_bins(), 257u);
  const double step = HzToMel(8000.0) / 81.0;
  for (std::size_t m = 0; m < 80; ++m) {
    EXPECT_NEAR(fb.center_hz()[m], MelToHz(step * static_cast<double>(m + 1)), 1e-9);
  }
  for (double w : fb.weights().data()) {
    EXPECT_GE(w, 0.0);
    EXPECT_LE(w, 1.0);
  }
}

TEST(LogMel, ShapeAndFloor) {
  Waveform w;
  w.samples.assign(16000, 0.0);
  const FeatureMatrix m = LogMelEnergies(w);
  EXPECT_EQ(m.num_features(), 80u);
  EXPECT_EQ(m.num_frames(), 98u);
  EXPECT_EQ(m.kind, FeatureKind::kLogMel);
  for (double v : m.data.data()) EXPECT_DOUBLE_EQ(v, std::log(1e-10));
}

TEST(LogMel, ToneLandsInNearestBand) {
  const FeatureMatrix m = LogMelEnergies(Tone(1000.0, 0.5));
  const MelFilterbank fb(80, 512, 16000);
  std::size_t nearest = 0;
  for (std::size_t b = 0; b < 80; ++b) {
    if (std::abs(fb.center_hz()[b] - 1000.0) < std::abs(fb.center_hz()[nearest] - 1000.0)) {
      nearest = b;
    }
  }
  for (std::size_t t = 0; t < m.num_frames(); ++t) {
    std::size_t best = 0;
    for (std::size_t b = 0; b < 80; ++b) {
      if (m.data(b, t) > m.data(best, t)) best = b;
    }
    EXPECT_EQ(best, nearest) << "frame " << t;
  }
}

TEST(LogMel, SerialAndParallelAgree) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Waveform w;
  w.samples.resize(12000);
  for (double& v : w.samples) v = 0.1 * g(rng);
  const auto a = LogMelEnergies(w, {}, Execution::kSerial);
  const auto b = LogMelEnergies(w, {}, Execution::kParallel);
  EXPECT_EQ(a.data.data(), b.data.data());
}

TEST(Perturbation, HandExamples) {
  EXPECT_NEAR(RelativePerturbationPercent(std::vector<double>{100, 102, 100, 102}),
              100.0 * (4.0 / 3.0) * 6.0 / 404.0, 1e-12);
  EXPECT_NEAR(RelativePerturbationPercent(std::vector<double>{100, 102, 100, 102}), 1.9802, 1e-4);
  EXPECT_NEAR(RelativePerturbationPercent(std::vector<double>{1.0, 1.1, 1.0, 1.1}), 9.5238, 1e-4);
  EXPECT_NEAR(RelativePerturbationPercent(std::vector<double>{1.0, 1.1, 1.0, 1.1}),
              100.0 * (4.0 / 3.0) * 0.3 / 4.2, 1e-9);
  EXPECT_EQ(RelativePerturbationPercent(std::vector<double>{5, 5, 5}), 0.0);
  EXPECT_THROW(RelativePerturbationPercent(std::vector<double>{5}), InvalidArgument);
}

TEST(Perturbation, ScaleInvariant) {
  PulseTrain p;
  p.peak_indices = {0, 100, 203, 301, 405, 502};
  p.peak_amplitudes = {1.0, 0.9, 1.2, 1.0, 0.8, 1.1};
  PulseTrain q = p;
  for (double& v : q.peak_indices) v *= 2.5;
  for (double& v : q.peak_amplitudes) v *= 0.3;
  EXPECT_NEAR(LocalJitter(p), LocalJitter(q), 1e-9);
  EXPECT_NEAR(LocalShimmer(p), LocalShimmer(q), 1e-9);
}

std::vector<double> ImpulseTrain(const std::vector<std::size_t>& periods, std::size_t length) {
  std::vector<double> x(length, 0.0);
  std::size_t n = 40, i = 0;
  while (n < length) {
    x[n] = 1.0;
    n += periods[i++ % periods.size()];
  }
  return x;
}

TEST(DetectPulses, ConstantPeriod) {
  const PulseTrain p = DetectPulses(ImpulseTrain({100}, 4000), 16000);
  ASSERT_GE(p.peak_indices.size(), 30u);
  for (double t : p.Periods()) EXPECT_NEAR(t, 100.0, 1e-9);
  EXPECT_NEAR(LocalJitter(p), 0.0, 1e-9);
  EXPECT_NEAR(LocalShimmer(p), 0.0, 1e-9);
}

TEST(DetectPulses, AlternatingPeriods) {
  const PulseTrain p = DetectPulses(ImpulseTrain({100, 102}, 4000), 16000);
  const auto periods = p.Periods();
  ASSERT_GE(periods.size(), 30u);
  for (std::size_t i = 1; i < periods.size(); ++i) {
    EXPECT_NEAR(periods[i] + periods[i - 1], 202.0, 1e-9);
    EXPECT_TRUE(std::abs(periods[i] - 100.0) < 1e-9 || std::abs(periods[i] - 102.0) < 1e-9);
  }
}

TEST(DetectPulses, LowNoiseDoesNotCrash) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  std::vector<double> x(4000);
  for (double& v : x) v = 1e-4 * g(rng);
  try {
    const PulseTrain p = DetectPulses(x, 16000);
    for (std::size_t i = 1; i < p.peak_indices.size(); ++i) {
      EXPECT_GT(p.peak_indices[i], p.peak_indices[i - 1]);
    }
  } catch (const DataError&) {
  }
}

TEST(DetectPulses, TooFewPulses) {
  EXPECT_THROW(DetectPulses(std::vector<double>(4000, 0.0), 16000), DataError);
}

using testing_util::PhaseTriad;

TEST(Bicoherence, PhaseCoupling) {
  const BicoherenceOptions opts{128, 128, 0.0};
  const auto coupled = Bicoherence(PhaseTriad(true, 64, 1), opts);
  const auto uncoupled = Bicoherence(PhaseTriad(false, 64, 1), opts);
  EXPECT_EQ(coupled.num_windows, 64u);
  EXPECT_GT(std::abs(coupled.at(12, 20)), 0.9);
  EXPECT_LT(std::abs(uncoupled.at(12, 20)), 0.3);
}

TEST(Bicoherence, GaussianNoiseStaysLow) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  std::vector<double> x(128 * 64);
  for (double& v : x) v = g(rng);
  const auto map = Bicoherence(x, {128, 128, 0.0});
  std::vector<double> mags;
  for (std::size_t k1 = 1; k1 < map.dim(); ++k1) {
    for (std::size_t k2 = 1; k1 + k2 < map.dim(); ++k2) mags.push_back(std::abs(map.at(k1, k2)));
  }
  std::sort(mags.begin(), mags.end());
  EXPECT_LT(mags[mags.size() * 99 / 100], 0.5);
}

TEST(Bicoherence, GridAndZeroRule) {
  const auto map = Bicoherence(std::vector<double>(4096, 0.0));
  EXPECT_EQ(map.dim(), 129u);
  EXPECT_EQ(map.values.size(), 129u * 129u);
  for (const auto& v : map.values) EXPECT_EQ(std::abs(v), 0.0);
  for (double m : Bicoherence(PhaseTriad(true, 32, 3), {128, 128, 0.5}).Magnitudes()) {
    EXPECT_LE(m, 1.0 + 1e-12);
  }
  EXPECT_THROW(Bicoherence(std::vector<double>(300, 1.0)), InvalidArgument);
}

TEST(Bicoherence, SerialAndParallelAgree) {
  const auto x = PhaseTriad(false, 40, 9);
  const auto a = Bicoherence(x, {128, 128, 0.5}, Execution::kSerial);
  const auto b = Bicoherence(x, {128, 128, 0.5}, Execution::kParallel);
  EXPECT_EQ(a.values, b.values);
}

TEST(Vad, ZerosGiveEmpty) {
  Waveform w;
  w.samples.assign(16000, 0.0);
  EXPECT_TRUE(RemoveSilence(w).empty());
}

TEST(Vad, NoSilenceIsIdentity) {
  const Waveform w = Tone(300.0, 1.0);
  EXPECT_EQ(RemoveSilence(w).samples, w.samples);
}

TEST(Vad, DropsMiddleSilence) {
  const Waveform tone = Tone(300.0, 1.0);
  Waveform w = tone;
  w.samples.resize(32000, 0.0);
  w.samples.insert(w.samples.end(), tone.samples.begin(), tone.samples.end());
  const double d = RemoveSilence(w).duration();
  EXPECT_GE(d, 2.0);
  EXPECT_LE(d, 2.0 + 2 * 5 * 0.010);
}

TEST(Histogram, Examples) {
  const auto one = Histogram(std::vector<double>(7, 0.5), 10, 0.0, 1.0);
  EXPECT_EQ(*std::max_element(one.begin(), one.end()), 7u);
  std::vector<double> grid(100);
  for (std::size_t i = 0; i < 100; ++i) grid[i] = (static_cast<double>(i) + 0.5) / 100.0;
  for (std::size_t c : Histogram(grid, 10, 0.0, 1.0)) EXPECT_EQ(c, 10u);
  for (std::size_t c : Histogram({}, 4, 0.0, 1.0)) EXPECT_EQ(c, 0u);
}

}  // namespace
}  // namespace spoofprint
