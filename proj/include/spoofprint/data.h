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

#ifndef SPOOFPRINT_DATA_H_
#define SPOOFPRINT_DATA_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spoofprint/features.h"
#include "spoofprint/taxonomy.h"
#include "spoofprint/wav.h"

namespace spoofprint {

struct UtteranceRecord {
  std::string utterance_id;
  std::string audio_path;  // relative paths resolve against the manifest dir
  std::size_t class_index = 0;
  std::string speaker_id;

  GeneratorFamily family() const { return FamilyOf(class_index); }
};

// UTF-8 CSV with header utterance_id,audio_path,algorithm_class,speaker_id.
// Unknown labels and duplicate ids are DataErrors naming the line. An empty
// file is an empty manifest.
std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path& path);
std::vector<UtteranceRecord> ParseManifest(const std::string& text,
                                           const std::string& name = "<manifest>");
void WriteManifest(const std::filesystem::path& path,
                   std::span<const UtteranceRecord> records);
std::filesystem::path ResolveAudioPath(const std::filesystem::path& manifest,
                                       const UtteranceRecord& record);

enum class SplitKind { kCs1, kCs2, kCustom };
std::string SplitKindName(SplitKind kind);
SplitKind ParseSplitKind(const std::string& name);

struct SplitSpec {
  SplitKind kind = SplitKind::kCs1;
  std::uint64_t seed = 0;
  std::vector<std::string> train, val, eval;
  // CS2 bookkeeping (empty for CS1).
  std::vector<std::string> train_speakers, val_speakers, eval_speakers, common_speakers;
  bool speaker_disjoint_eval = false;

  const std::vector<std::string>& partition(const std::string& name) const;
  std::string ToJson() const;
  static SplitSpec FromJson(const std::string& text);
};

struct SplitOptions {
  SplitKind kind = SplitKind::kCs1;
  std::uint64_t seed = 0;
  // CS2: speakers shared by train and validation.
  std::size_t common_speakers = 10;
  // CS2: fraction of speakers held out for evaluation.
  double eval_speaker_fraction = 0.5;
};

// CS1: per class 40/10/50 by rounding, every class in every partition.
// CS2: evaluation speakers disjoint from train and validation, which share
// exactly the common-speaker set. Deterministic in the seed; ids in each
// partition are sorted.
SplitSpec MakeSplit(std::span<const UtteranceRecord> records, const SplitOptions& opts);

// A pole pair of the all-pole vocal tract filter.
struct Formant {
  double frequency_hz = 500.0;
  double radius = 0.97;
};

double BandwidthToRadius(double bandwidth_hz, int sample_rate);

// Per-class recipe for the source-filter toy synthesizer.
struct ToySpec {
  std::string name;
  std::size_t class_index = kNaturalClass;
  double f0 = 120.0;
  double jitter_pct = 0.0;
  double shimmer_pct = 0.0;
  std::vector<Formant> formants;
  double noise_mix = 0.0;    // noise RMS relative to pulse-train RMS
  double silence_pad = 0.1;  // seconds of digital silence on each side
  double duration = 0.6;     // seconds of voicing
  int sample_rate = 16000;
  std::uint64_t seed = 0;

  // Throws InvalidArgument naming the class.
  void Validate() const;
};

// Half-width of the uniform period (or amplitude) perturbation whose expected
// local jitter (or shimmer) equals target_pct. For u, u' iid U[-w, w],
// E|u - u'| = 2w/3, so w = 3 * target / 200.
double PerturbationHalfWidth(double target_pct);

struct ToyUtterance {
  Waveform wave;
  PulseTrain pulses;  // exact excitation positions and amplitudes
};

// Impulse train (fractional positions via windowed sinc) with uniform period
// and amplitude perturbation, optional white noise, through the formant
// cascade with frequencies multiplied by formant_scale. Peak-normalized to 0.5
// with silence_pad of zeros on both sides.
ToyUtterance SynthesizeToyUtterance(const ToySpec& spec, double formant_scale = 1.0);

struct ToyCorpusOptions {
  int sample_rate = 16000;
  std::size_t utterances_per_class = 50;
  std::size_t speakers = 10;
  double speaker_spread = 0.08;  // formant scale drawn from 1 +- spread
  std::uint64_t seed = 0;
};

struct ToyCorpusConfig {
  ToyCorpusOptions options;
  std::vector<ToySpec> classes;
};

// INI-style text: a [corpus] section and one [class <name>] section per
// class, key = value lines, '#' comments.
ToyCorpusConfig ParseToyConfig(const std::string& text,
                               const std::string& name = "<toy spec>");
ToyCorpusConfig LoadToyConfig(const std::filesystem::path& path);

// Per-speaker formant scale factors, reproducible from the seed.
std::vector<double> SpeakerFormantScales(const ToyCorpusOptions& opts);

// Deterministic recipe for one corpus utterance (seed derived from the corpus
// seed, class and utterance index), so generation order does not matter.
ToySpec UtteranceSpec(const ToySpec& cls, std::size_t class_position,
                      std::size_t utterance, const ToyCorpusOptions& opts);

// Writes <out_dir>/wav/<id>.wav and <out_dir>/manifest.csv. Returns records
// sorted by utterance id.
std::vector<UtteranceRecord> BuildToyCorpus(const ToyCorpusConfig& config,
                                            const std::filesystem::path& out_dir);

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace spoofprint

#endif  // SPOOFPRINT_DATA_H_
