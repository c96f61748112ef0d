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

#ifndef SPOOFPRINT_PIPELINE_H_
#define SPOOFPRINT_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spoofprint/data.h"
#include "spoofprint/eval.h"
#include "spoofprint/features.h"
#include "spoofprint/model.h"
#include "spoofprint/train.h"

namespace spoofprint {

// Cache file of one utterance: <dir>/<id>.logmel.vafx or <dir>/<id>.lpr.vars.
std::filesystem::path CachePath(const std::filesystem::path& dir, const std::string& id,
                                FeatureKind kind);

// Where model inputs come from: cached features when cache_dir is set,
// otherwise the audio referenced by the manifest.
struct DataOptions {
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> cache_dir;
  bool remove_silence = false;
};

// Loads audio (applying silence removal when asked), or reads the caches,
// and builds model inputs in record order. Per-utterance failures are
// appended to `failures` as "id: reason" and the utterance is dropped; with
// a null `failures` the first one throws.
std::vector<Example> LoadExamples(const DataOptions& data, std::span<const UtteranceRecord> records,
                                  const ModelConfig& config, std::vector<std::string>* failures);

// Records of one partition, sorted by utterance id.
std::vector<UtteranceRecord> PartitionRecords(std::span<const UtteranceRecord> records,
                                              const SplitSpec& split, const std::string& name);

// The split from a split file when given, otherwise generated from the
// manifest.
SplitSpec ResolveSplit(std::span<const UtteranceRecord> records, const SplitOptions& options,
                       const std::optional<std::filesystem::path>& split_file);

struct ToygenOptions {
  std::filesystem::path spec_file;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;  // overrides the spec file's seed
};

std::vector<UtteranceRecord> RunToygen(const ToygenOptions& opts);

struct ExtractOptions {
  std::filesystem::path manifest;
  std::filesystem::path cache_dir;
  std::string kind = "logmel";  // logmel, lpr, jitter-shimmer, bicoherence
  bool remove_silence = false;
  std::size_t lp_order = kExperimentLpOrder;
  LogMelOptions log_mel;
  PulseDetectorOptions pulses;
  BicoherenceOptions bicoherence;
};

struct ExtractSummary {
  std::size_t written = 0;
  std::vector<std::string> skipped;  // "id: reason"
  std::vector<std::string> failed;   // "id: reason"
};

// One cache file per utterance (logmel, lpr, bicoherence grids) plus a
// summary CSV for jitter-shimmer and bicoherence. Utterances left empty by
// silence removal are skipped; other per-utterance errors are recorded and
// the run continues.
ExtractSummary RunExtract(const ExtractOptions& opts);

struct TrainRunOptions {
  DataOptions data;
  SplitOptions split;
  std::optional<std::filesystem::path> split_file;
  ModelConfig model;
  TrainOptions train;
  std::filesystem::path out_dir;
};

struct TrainRunResult {
  TrainResult training;
  SplitSpec split;
};

// Writes <out_dir>/model.vamd (best validation epoch), train_log.csv and
// split.json.
TrainRunResult RunTrain(const TrainRunOptions& opts);

struct EvalRunOptions {
  DataOptions data;
  SplitOptions split;
  std::optional<std::filesystem::path> split_file;
  std::string partition = "eval";
  std::vector<std::filesystem::path> models;          // one, or two with late_fuse
  std::optional<std::pair<double, double>> late_fuse;  // weights of models[0], models[1]
  std::filesystem::path report_dir;
};

// Writes report.json, report.txt, confusion.csv, roc.csv (when both natural
// and spoof utterances are present), predictions.csv, attention.jsonl and
// embeddings CSVs to report_dir.
EvalReport RunEval(const EvalRunOptions& opts);

// Writes text, throwing DataError with the path on failure.
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace spoofprint

#endif  // SPOOFPRINT_PIPELINE_H_
