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
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "spoofprint/checkpoint.h"
#include "spoofprint/errors.h"
#include "spoofprint/feature-io.h"
#include "spoofprint/features.h"
#include "spoofprint/lp.h"
#include "spoofprint/model.h"
#include "spoofprint/train.h"
#include "spoofprint/wav.h"

namespace spoofprint {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

Waveform Noise(std::size_t n, std::uint64_t seed, double scale = 0.1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Waveform w;
  w.samples.resize(n);
  for (double& v : w.samples) v = std::clamp(scale * g(rng), -1.0, 1.0);
  return w;
}

TEST(Wav, RoundTripWithinQuantization) {
  TempDir dir("spoofprint_wav");
  const Waveform w = Noise(5000, 1);
  WriteWav(dir.path() / "a.wav", w);
  const Waveform r = ReadWav(dir.path() / "a.wav");
  EXPECT_EQ(r.sample_rate, 16000);
  ASSERT_EQ(r.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(r.samples[i], w.samples[i], 1.0 / 32768);
  EXPECT_EQ(EncodeWav(r), EncodeWav(DecodeWav(EncodeWav(r))));
}

TEST(Wav, RejectsGarbage) {
  EXPECT_THROW(DecodeWav({'R', 'I', 'F', 'F'}), DataError);
  auto bytes = EncodeWav(Noise(10, 2));
  bytes[34] = 8;  // bits per sample
  EXPECT_THROW(DecodeWav(bytes), DataError);
  EXPECT_THROW(ReadWav("/nonexistent/x.wav"), DataError);
}

TEST(Wav, PeakNormalized) {
  const Waveform w = PeakNormalized(Noise(100, 3), 0.5);
  double peak = 0.0;
  for (double v : w.samples) peak = std::max(peak, std::abs(v));
  EXPECT_NEAR(peak, 0.5, 1e-12);
}

TEST(FeatureCache, RoundTripToFloat) {
  TempDir dir("spoofprint_cache");
  const FeatureMatrix m = LogMelEnergies(Noise(8000, 4));
  WriteFeatureCache(dir.path() / "m.vafx", m);
  const FeatureMatrix r = ReadFeatureCache(dir.path() / "m.vafx");
  EXPECT_EQ(r.kind, m.kind);
  EXPECT_EQ(r.num_features(), 80u);
  EXPECT_EQ(r.num_frames(), m.num_frames());
  for (std::size_t i = 0; i < m.data.data().size(); ++i) {
    const double v = m.data.data()[i];
    EXPECT_EQ(r.data.data()[i], static_cast<double>(static_cast<float>(v)));
  }
}

TEST(FeatureCache, RejectsTruncation) {
  TempDir dir("spoofprint_cache_bad");
  WriteFeatureCache(dir.path() / "m.vafx", LogMelEnergies(Noise(4000, 5)));
  fs::resize_file(dir.path() / "m.vafx", fs::file_size(dir.path() / "m.vafx") - 3);
  EXPECT_THROW(ReadFeatureCache(dir.path() / "m.vafx"), DataError);
  std::ofstream(dir.path() / "junk.vafx") << "not a cache";
  EXPECT_THROW(ReadFeatureCache(dir.path() / "junk.vafx"), DataError);
}

TEST(Residual, RoundTripExact) {
  TempDir dir("spoofprint_residual");
  const ResidualSignal r = LpResidual(Noise(6000, 6), 23);
  WriteResidual(dir.path() / "r.vars", r);
  const ResidualSignal back = ReadResidual(dir.path() / "r.vars");
  EXPECT_EQ(back.samples, r.samples);
  EXPECT_EQ(back.sample_rate, r.sample_rate);
  EXPECT_EQ(back.order, r.order);
  WriteResidualWav(dir.path() / "r.wav", r);
  EXPECT_EQ(ReadWav(dir.path() / "r.wav").size(), r.samples.size());
}

TEST(Checkpoint, RoundTripClassifiesIdentically) {
  TempDir dir("spoofprint_ckpt");
  for (Architecture arch :
       {Architecture::kLpr, Architecture::kLms, Architecture::kFuseIntermediate}) {
    ModelConfig config;
    config.arch = arch;
    config.num_heads = 2;
    config.seed = 21;
    const AttributionModel model(config);
    const fs::path path = dir.path() / (ArchitectureName(arch) + ".vamd");
    SaveCheckpoint(path, model);
    const AttributionModel back = LoadCheckpoint(path);
    EXPECT_EQ(back.config().ToJson(), config.ToJson());
    const Waveform w = Noise(16000, 7);
    EXPECT_EQ(back.Classify(w).logits, model.Classify(w).logits);
  }
  std::ofstream(dir.path() / "junk.vamd") << "junk";
  EXPECT_THROW(LoadCheckpoint(dir.path() / "junk.vamd"), DataError);
}

// Two classes of noise at different spectral tilts.
std::vector<Example> TiltExamples(std::size_t n, std::uint64_t seed, const ModelConfig& config) {
  std::vector<Example> out;
  for (std::size_t i = 0; i < n; ++i) {
    Waveform w = Noise(9000, seed * 1000 + i);
    if (i % 2) {
      for (std::size_t k = w.size() - 1; k > 0; --k) w.samples[k] += 0.95 * w.samples[k - 1];
    }
    out.push_back({"u" + std::to_string(i), i % 2 ? kNaturalClass : 0,
                   FeaturesFromWaveform(w, config)});
  }
  return out;
}

TEST(Train, LearnsAndIsReproducible) {
  ModelConfig config;
  config.arch = Architecture::kLms;
  config.seed = 3;
  const auto train = TiltExamples(16, 1, config);
  const auto val = TiltExamples(8, 2, config);
  TrainOptions opts;
  opts.epochs = 6;
  opts.batch_size = 4;
  opts.seed = 5;
  AttributionModel a(config), b(config);
  const TrainResult ra = Train(&a, train, val, opts);
  const TrainResult rb = Train(&b, train, val, opts);
  ASSERT_EQ(ra.history.size(), 6u);
  EXPECT_LT(ra.history.back().train_loss, ra.history.front().train_loss);
  EXPECT_EQ(ra.best_val_accuracy, 100.0);
  EXPECT_EQ(TrainLogCsv(ra.history), TrainLogCsv(rb.history));
  EXPECT_EQ(a.SnapshotParameters(), b.SnapshotParameters());
  EXPECT_DOUBLE_EQ(Evaluate(a, val, 3).accuracy, ra.best_val_accuracy);
}

TEST(Train, RejectsEmptySets) {
  ModelConfig config;
  config.arch = Architecture::kLms;
  AttributionModel m(config);
  const auto some = TiltExamples(2, 1, config);
  EXPECT_THROW(Train(&m, {}, some, {}), DataError);
  EXPECT_THROW(Train(&m, some, {}, {}), DataError);
}

}  // namespace
}  // namespace spoofprint
