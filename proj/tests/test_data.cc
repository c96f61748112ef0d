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
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "spoofprint/data.h"
#include "spoofprint/errors.h"
#include "spoofprint/features.h"
#include "spoofprint/lp.h"

namespace spoofprint {
namespace {

namespace fs = std::filesystem;

std::vector<UtteranceRecord> Corpus(std::size_t per_class, const std::vector<std::string>& classes,
                                    std::size_t speakers) {
  std::vector<UtteranceRecord> out;
  for (const auto& c : classes) {
    for (std::size_t i = 0; i < per_class; ++i) {
      UtteranceRecord r;
      r.utterance_id = c + "_" + std::to_string(1000 + i);
      r.audio_path = "wav/" + r.utterance_id + ".wav";
      r.class_index = ParseClass(c);
      r.speaker_id = "spk" + std::to_string(i % speakers);
      out.push_back(r);
    }
  }
  return out;
}

TEST(Manifest, MergesA16IntoA04) {
  const auto recs = ParseManifest(
      "utterance_id,audio_path,algorithm_class,speaker_id\nu1,a.wav,A16,s1\nu2,b.wav,A19,s2\n");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].class_index, ParseClass("A04"));
  EXPECT_EQ(ClassName(recs[0].class_index), "A04/A16");
  EXPECT_EQ(recs[1].class_index, ParseClass("A06"));
}

TEST(Manifest, RejectsUnknownClassWithLine) {
  try {
    ParseManifest("utterance_id,audio_path,algorithm_class,speaker_id\nu1,a.wav,A01,s\nu2,b.wav,A20,s\n",
                  "m.csv");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("m.csv:3"), std::string::npos) << e.what();
  }
}

TEST(Manifest, RejectsDuplicateId) {
  EXPECT_THROW(ParseManifest("utterance_id,audio_path,algorithm_class,speaker_id\n"
                             "u1,a.wav,A01,s\nu1,b.wav,A02,s\n"),
               DataError);
}

TEST(Manifest, EmptyFileIsEmptyList) {
  EXPECT_TRUE(ParseManifest("").empty());
  EXPECT_TRUE(ParseManifest("utterance_id,audio_path,algorithm_class,speaker_id\n").empty());
}

TEST(Manifest, RoundTrip) {
  const fs::path dir = fs::temp_directory_path() / "spoofprint_manifest_test";
  fs::create_directories(dir);
  const auto recs = Corpus(3, {"A01", "Natural"}, 2);
  WriteManifest(dir / "m.csv", recs);
  const auto back = LoadManifest(dir / "m.csv");
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(back[i].utterance_id, recs[i].utterance_id);
    EXPECT_EQ(back[i].class_index, recs[i].class_index);
    EXPECT_EQ(back[i].speaker_id, recs[i].speaker_id);
  }
  EXPECT_EQ(ResolveAudioPath(dir / "m.csv", back[0]), dir / back[0].audio_path);
  fs::remove_all(dir);
}

void ExpectPartition(const SplitSpec& s, std::size_t total) {
  std::set<std::string> all;
  for (const auto* p : {&s.train, &s.val, &s.eval}) {
    for (const auto& id : *p) EXPECT_TRUE(all.insert(id).second) << "duplicate " << id;
  }
  EXPECT_EQ(all.size(), total);
}

TEST(Split, Cs1ProportionsPerClass) {
  const auto recs = Corpus(100, {"A01", "A02", "Natural"}, 10);
  const SplitSpec s = MakeSplit(recs, {SplitKind::kCs1, 7});
  ExpectPartition(s, recs.size());
  std::map<std::string, std::size_t> train, val, eval;
  for (const auto& id : s.train) ++train[id.substr(0, id.find('_'))];
  for (const auto& id : s.val) ++val[id.substr(0, id.find('_'))];
  for (const auto& id : s.eval) ++eval[id.substr(0, id.find('_'))];
  for (const std::string c : {"A01", "A02", "Natural"}) {
    EXPECT_EQ(train[c], 40u);
    EXPECT_EQ(val[c], 10u);
    EXPECT_EQ(eval[c], 50u);
  }
}

TEST(Split, Cs1RoundingWithinOne) {
  const auto recs = Corpus(37, {"A01", "A05"}, 4);
  const SplitSpec s = MakeSplit(recs, {SplitKind::kCs1, 1});
  ExpectPartition(s, recs.size());
  EXPECT_NEAR(static_cast<double>(s.train.size()) / 2, 0.4 * 37, 1.0);
  EXPECT_NEAR(static_cast<double>(s.val.size()) / 2, 0.1 * 37, 1.0);
}

TEST(Split, DeterministicInSeed) {
  const auto recs = Corpus(20, {"A01", "Natural"}, 5);
  const SplitSpec a = MakeSplit(recs, {SplitKind::kCs1, 3});
  const SplitSpec b = MakeSplit(recs, {SplitKind::kCs1, 3});
  const SplitSpec c = MakeSplit(recs, {SplitKind::kCs1, 4});
  EXPECT_EQ(a.ToJson(), b.ToJson());
  EXPECT_NE(a.ToJson(), c.ToJson());
  EXPECT_EQ(SplitSpec::FromJson(a.ToJson()).ToJson(), a.ToJson());
}

TEST(Split, Cs1NeedsThreePerClass) {
  EXPECT_THROW(MakeSplit(Corpus(2, {"A01", "Natural"}, 2), {SplitKind::kCs1, 0}), DataError);
}

TEST(Split, Cs2SpeakerDisjoint) {
  const auto recs = Corpus(50, {"A01", "A04", "A11", "Natural"}, 10);
  SplitOptions opts{SplitKind::kCs2, 5};
  opts.common_speakers = 2;
  const SplitSpec s = MakeSplit(recs, opts);
  ExpectPartition(s, recs.size());
  EXPECT_TRUE(s.speaker_disjoint_eval);
  std::map<std::string, std::string> speaker;
  for (const auto& r : recs) speaker[r.utterance_id] = r.speaker_id;
  auto speakers_of = [&](const std::vector<std::string>& ids) {
    std::set<std::string> out;
    for (const auto& id : ids) out.insert(speaker[id]);
    return out;
  };
  const auto tr = speakers_of(s.train), va = speakers_of(s.val), ev = speakers_of(s.eval);
  for (const auto& sp : ev) {
    EXPECT_FALSE(tr.count(sp));
    EXPECT_FALSE(va.count(sp));
  }
  std::set<std::string> shared;
  for (const auto& sp : tr) {
    if (va.count(sp)) shared.insert(sp);
  }
  EXPECT_EQ(shared, std::set<std::string>(s.common_speakers.begin(), s.common_speakers.end()));
  EXPECT_EQ(shared.size(), 2u);
}

TEST(Split, Cs2InfeasibleWhenClassHasOneSpeaker) {
  auto recs = Corpus(10, {"A01", "Natural"}, 5);
  for (auto& r : recs) {
    if (r.class_index == kNaturalClass) r.speaker_id = "spk0";
  }
  SplitOptions opts{SplitKind::kCs2, 1};
  opts.common_speakers = 1;
  EXPECT_THROW(MakeSplit(recs, opts), DataError);
}

TEST(Toy, PerturbationCalibration) {
  EXPECT_DOUBLE_EQ(PerturbationHalfWidth(2.0), 0.03);
  EXPECT_DOUBLE_EQ(PerturbationHalfWidth(0.0), 0.0);
}

ToySpec BaseSpec() {
  ToySpec s;
  s.name = "t";
  s.f0 = 125.0;
  s.formants = {{500, 0.97}, {1500, 0.95}};
  s.seed = 1;
  return s;
}

TEST(Toy, NoPerturbationGivesNominalPeriod) {
  const ToyUtterance u = SynthesizeToyUtterance(BaseSpec());
  const auto periods = u.pulses.Periods();
  ASSERT_GT(periods.size(), 50u);
  for (double p : periods) EXPECT_DOUBLE_EQ(p, 128.0);
  for (double a : u.pulses.peak_amplitudes) EXPECT_DOUBLE_EQ(a, 1.0);
}

TEST(Toy, SilencePadsAndPeak) {
  const ToySpec spec = BaseSpec();
  const ToyUtterance u = SynthesizeToyUtterance(spec);
  const std::size_t pad = static_cast<std::size_t>(spec.silence_pad * spec.sample_rate);
  EXPECT_EQ(u.wave.size(), 2 * pad + static_cast<std::size_t>(spec.duration * spec.sample_rate));
  for (std::size_t n = 0; n < pad; ++n) {
    EXPECT_EQ(u.wave.samples[n], 0.0);
    EXPECT_EQ(u.wave.samples[u.wave.size() - 1 - n], 0.0);
  }
  double peak = 0.0;
  for (double v : u.wave.samples) peak = std::max(peak, std::abs(v));
  EXPECT_NEAR(peak, 0.5, 1e-12);
}

TEST(Toy, SourceIndependentOfFormants) {
  ToySpec a = BaseSpec();
  a.jitter_pct = 1.0;
  a.shimmer_pct = 5.0;
  ToySpec b = a;
  b.formants = {{800, 0.9}};
  const auto ua = SynthesizeToyUtterance(a);
  const auto ub = SynthesizeToyUtterance(b, 1.07);
  EXPECT_EQ(ua.pulses.peak_indices, ub.pulses.peak_indices);
  EXPECT_EQ(ua.pulses.peak_amplitudes, ub.pulses.peak_amplitudes);
}

TEST(Toy, GroundTruthJitterMatchesTarget) {
  ToySpec s = BaseSpec();
  s.jitter_pct = 2.0;
  s.shimmer_pct = 6.0;
  s.duration = 3.0;
  double jitter = 0.0, shimmer = 0.0;
  const int trials = 20;
  for (int i = 0; i < trials; ++i) {
    s.seed = 100 + i;
    const auto u = SynthesizeToyUtterance(s);
    ASSERT_GE(u.pulses.Periods().size(), 100u);
    jitter += LocalJitter(u.pulses) / trials;
    shimmer += LocalShimmer(u.pulses) / trials;
  }
  EXPECT_NEAR(jitter, 2.0, 0.2);
  EXPECT_NEAR(shimmer, 6.0, 0.6);
}

TEST(Toy, MeasuredJitterWithinEstimatorTolerance) {
  ToySpec s = BaseSpec();
  s.jitter_pct = 2.0;
  for (int i = 0; i < 100; ++i) {
    s.seed = 1000 + i;
    const auto u = SynthesizeToyUtterance(s);
    const double j = LocalJitter(DetectPulses(LpResidual(u.wave, kExperimentLpOrder)));
    EXPECT_GE(j, 1.0) << "seed " << s.seed;
    EXPECT_LE(j, 3.0) << "seed " << s.seed;
  }
}

TEST(Toy, RejectsUnstablePole) {
  const std::string text =
      "[corpus]\nutterances_per_class = 2\n"
      "[class Natural]\nf0 = 100\nformants = 500:80\n"
      "[class A07]\nf0 = 120\npoles = 700:1.02\n";
  try {
    ParseToyConfig(text, "bad.ini");
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("A07"), std::string::npos) << e.what();
  }
}

TEST(Toy, ConfigErrors) {
  EXPECT_THROW(ParseToyConfig("[corpus]\nspeakers = 2\n[class Natural]\nf0 = 100\n"),
               InvalidArgument);
  EXPECT_THROW(ParseToyConfig("[corpus]\nbogus = 1\n"), InvalidArgument);
  EXPECT_THROW(ParseToyConfig("[class A01]\nf0 = 100\n[class A01]\nf0 = 90\n"), InvalidArgument);
}

TEST(Toy, CorpusIsReproducible) {
  const std::string text =
      "[corpus]\nutterances_per_class = 3\nspeakers = 2\nseed = 9\n"
      "[class Natural]\nf0 = 110\njitter_pct = 1.5\nnoise_mix = 0.2\nformants = 700:100\n"
      "[class A04]\nf0 = 170\njitter_pct = 0.05\nformants = 400:70\n";
  const ToyCorpusConfig config = ParseToyConfig(text);
  const fs::path a = fs::temp_directory_path() / "spoofprint_toy_a";
  const fs::path b = fs::temp_directory_path() / "spoofprint_toy_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const auto ra = BuildToyCorpus(config, a);
  BuildToyCorpus(config, b);
  ASSERT_EQ(ra.size(), 6u);
  auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  EXPECT_EQ(read(a / "manifest.csv"), read(b / "manifest.csv"));
  for (const auto& r : ra) EXPECT_EQ(read(a / r.audio_path), read(b / r.audio_path)) << r.audio_path;
  EXPECT_TRUE(std::is_sorted(ra.begin(), ra.end(), [](const auto& x, const auto& y) {
    return x.utterance_id < y.utterance_id;
  }));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(MixSeed, Distinct) {
  EXPECT_NE(MixSeed(1, 2, 3), MixSeed(1, 3, 2));
  EXPECT_EQ(MixSeed(1, 2, 3), MixSeed(1, 2, 3));
}

}  // namespace
}  // namespace spoofprint
