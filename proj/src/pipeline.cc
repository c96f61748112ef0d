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

#include "spoofprint/pipeline.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "json.hpp"
#include "spoofprint/checkpoint.h"
#include "spoofprint/errors.h"
#include "spoofprint/feature-io.h"
#include "spoofprint/lp.h"
#include "spoofprint/wav.h"

namespace spoofprint {
namespace fs = std::filesystem;

namespace {

std::string ReadTextFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Per-slot results of a parallel loop over utterances; rethrow or record in
// index order so output does not depend on scheduling.
struct Outcome {
  bool ok = false;
  bool skipped = false;
  std::string message;
};

template <typename Fn>
std::vector<Outcome> ForEachUtterance(std::size_t n, Fn&& fn) {
  std::vector<Outcome> out(n);
  std::vector<std::exception_ptr> fatal(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      fn(i, &out[i]);
      if (!out[i].skipped) out[i].ok = true;
    } catch (const DataError& e) {
      out[i].message = e.what();
    } catch (const NumericalError& e) {
      out[i].message = e.what();
    } catch (...) {
      fatal[i] = std::current_exception();
    }
  }
  for (const auto& e : fatal) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Waveform LoadAudio(const fs::path& manifest, const UtteranceRecord& rec, bool remove_silence) {
  Waveform wave = ReadWav(ResolveAudioPath(manifest, rec));
  if (remove_silence) wave = RemoveSilence(wave);
  return wave;
}

std::vector<double> Softmax(std::span<const double> logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

std::size_t Argmax(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::string EmbeddingsCsv(std::span<const std::string> ids, std::span<const std::size_t> truths,
                          std::span<const std::vector<double>> rows) {
  std::ostringstream out;
  out << "utterance_id,class";
  const std::size_t dim = rows.empty() ? 0 : rows.front().size();
  for (std::size_t k = 0; k < dim; ++k) out << ",e" << k;
  out << "\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << ids[i] << "," << ClassName(truths[i]);
    for (double v : rows[i]) out << "," << FormatNumber(v);
    out << "\n";
  }
  return out.str();
}

std::string AttentionLine(const std::string& id, const std::string& model,
                          const AttentionMap& map) {
  const AttentionSummary s = BinarizeAttention(map);
  nlohmann::ordered_json j;
  j["utterance_id"] = id;
  j["model"] = model;
  j["head"] = map.head;
  j["frames"] = map.frames;
  j["receptive_field_s"] =
      static_cast<double>(map.timing.receptive_field) / map.timing.sample_rate;
  j["stride_s"] = static_cast<double>(map.timing.stride) / map.timing.sample_rate;
  j["mean_attention"] = s.mean;
  j["threshold"] = s.threshold;
  j["mask"] = s.mask;
  auto intervals = nlohmann::ordered_json::array();
  for (const auto& [a, b] : s.intervals) intervals.push_back({a, b});
  j["intervals"] = intervals;
  return j.dump() + "\n";
}

}  // namespace

void WriteTextFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DataError("cannot write " + path.string());
}

fs::path CachePath(const fs::path& dir, const std::string& id, FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLogMel:
      return dir / (id + ".logmel.vafx");
    case FeatureKind::kLearnedResidual:
      return dir / (id + ".lpr.vars");
  }
  throw InvalidArgument("unknown feature kind");
}

std::vector<Example> LoadExamples(const DataOptions& data, std::span<const UtteranceRecord> records,
                                  const ModelConfig& config, std::vector<std::string>* failures) {
  if (data.cache_dir) {
    // Missing caches are configuration errors, reported before any work.
    for (const auto& rec : records) {
      if (UsesResidual(config.arch) &&
          !fs::exists(CachePath(*data.cache_dir, rec.utterance_id, FeatureKind::kLearnedResidual))) {
        throw InvalidArgument(ArchitectureName(config.arch) + " needs cached LP residuals; missing " +
                              CachePath(*data.cache_dir, rec.utterance_id,
                                        FeatureKind::kLearnedResidual)
                                  .string() +
                              " (run extract --kind lpr)");
      }
      if (UsesLogMel(config.arch) &&
          !fs::exists(CachePath(*data.cache_dir, rec.utterance_id, FeatureKind::kLogMel))) {
        throw InvalidArgument(ArchitectureName(config.arch) + " needs cached log-mel features; missing " +
                              CachePath(*data.cache_dir, rec.utterance_id, FeatureKind::kLogMel)
                                  .string() +
                              " (run extract --kind logmel)");
      }
    }
  }
  std::vector<Example> slots(records.size());
  const auto outcomes = ForEachUtterance(records.size(), [&](std::size_t i, Outcome* o) {
    const UtteranceRecord& rec = records[i];
    Example& ex = slots[i];
    ex.utterance_id = rec.utterance_id;
    ex.label = rec.class_index;
    if (data.cache_dir) {
      std::unique_ptr<ResidualSignal> residual;
      std::unique_ptr<FeatureMatrix> log_mel;
      if (UsesResidual(config.arch)) {
        residual = std::make_unique<ResidualSignal>(ReadResidual(
            CachePath(*data.cache_dir, rec.utterance_id, FeatureKind::kLearnedResidual)));
      }
      if (UsesLogMel(config.arch)) {
        log_mel = std::make_unique<FeatureMatrix>(
            ReadFeatureCache(CachePath(*data.cache_dir, rec.utterance_id, FeatureKind::kLogMel)));
      }
      ex.features = FeaturesFromCache(residual.get(), log_mel.get(), config);
    } else {
      const Waveform wave = LoadAudio(data.manifest, rec, data.remove_silence);
      if (wave.empty()) throw DataError("no speech left after silence removal");
      ex.features = FeaturesFromWaveform(wave, config, Execution::kSerial);
    }
    CheckFeatures(ex.features, config, rec.utterance_id);
    (void)o;
  });
  std::vector<Example> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (outcomes[i].ok) {
      out.push_back(std::move(slots[i]));
      continue;
    }
    std::string msg = outcomes[i].message;
    if (msg.rfind(records[i].utterance_id, 0) != 0) msg = records[i].utterance_id + ": " + msg;
    if (!failures) throw DataError(msg);
    failures->push_back(msg);
  }
  return out;
}

std::vector<UtteranceRecord> PartitionRecords(std::span<const UtteranceRecord> records,
                                              const SplitSpec& split, const std::string& name) {
  std::map<std::string, const UtteranceRecord*> by_id;
  for (const auto& r : records) by_id[r.utterance_id] = &r;
  std::vector<std::string> ids = split.partition(name);
  std::sort(ids.begin(), ids.end());
  std::vector<UtteranceRecord> out;
  for (const auto& id : ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw InvalidArgument("split lists utterance '" + id + "' which is not in the manifest");
    }
    out.push_back(*it->second);
  }
  return out;
}

SplitSpec ResolveSplit(std::span<const UtteranceRecord> records, const SplitOptions& options,
                       const std::optional<fs::path>& split_file) {
  if (split_file) return SplitSpec::FromJson(ReadTextFile(*split_file));
  return MakeSplit(records, options);
}

std::vector<UtteranceRecord> RunToygen(const ToygenOptions& opts) {
  ToyCorpusConfig config = LoadToyConfig(opts.spec_file);
  if (opts.seed) config.options.seed = *opts.seed;
  return BuildToyCorpus(config, opts.out_dir);
}

ExtractSummary RunExtract(const ExtractOptions& opts) {
  static const std::set<std::string> kKinds = {"logmel", "lpr", "jitter-shimmer", "bicoherence"};
  if (!kKinds.count(opts.kind)) {
    throw InvalidArgument("unknown feature kind '" + opts.kind +
                          "' (expected logmel, lpr, jitter-shimmer or bicoherence)");
  }
  const std::vector<UtteranceRecord> records = LoadManifest(opts.manifest);
  fs::create_directories(opts.cache_dir);

  struct Row {
    std::size_t pulses = 0;
    double jitter = 0.0, shimmer = 0.0;
    std::size_t windows = 0;
    double mean_mag = 0.0, max_mag = 0.0;
  };
  std::vector<Row> rows(records.size());
  const auto outcomes = ForEachUtterance(records.size(), [&](std::size_t i, Outcome* o) {
    const UtteranceRecord& rec = records[i];
    const Waveform wave = LoadAudio(opts.manifest, rec, opts.remove_silence);
    if (wave.empty()) {
      o->skipped = true;
      o->message = "no speech left after silence removal";
      return;
    }
    const Execution exec = Execution::kSerial;
    if (opts.kind == "logmel") {
      WriteFeatureCache(CachePath(opts.cache_dir, rec.utterance_id, FeatureKind::kLogMel),
                        LogMelEnergies(wave, opts.log_mel, exec));
      return;
    }
    const ResidualSignal residual = LpResidual(wave, opts.lp_order, 400, 160, exec);
    if (opts.kind == "lpr") {
      WriteResidual(CachePath(opts.cache_dir, rec.utterance_id, FeatureKind::kLearnedResidual),
                    residual);
    } else if (opts.kind == "jitter-shimmer") {
      const PulseTrain pulses = DetectPulses(residual, opts.pulses);
      rows[i].pulses = pulses.peak_indices.size();
      rows[i].jitter = LocalJitter(pulses);
      rows[i].shimmer = LocalShimmer(pulses);
    } else {
      const BicoherenceMap map = Bicoherence(residual.samples, opts.bicoherence, exec);
      WriteBicoherenceCsv(opts.cache_dir / (rec.utterance_id + ".bicoherence.csv"), map);
      const std::vector<double> mags = map.Magnitudes();
      double sum = 0.0, mx = 0.0;
      for (double m : mags) {
        sum += m;
        mx = std::max(mx, m);
      }
      rows[i].windows = map.num_windows;
      rows[i].mean_mag = mags.empty() ? 0.0 : sum / static_cast<double>(mags.size());
      rows[i].max_mag = mx;
    }
  });

  ExtractSummary summary;
  std::ostringstream csv;
  if (opts.kind == "jitter-shimmer") {
    csv << "utterance_id,class,family,num_pulses,jitter_pct,shimmer_pct\n";
  } else if (opts.kind == "bicoherence") {
    csv << "utterance_id,class,family,num_windows,mean_magnitude,max_magnitude\n";
  }
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].utterance_id < records[b].utterance_id;
  });
  for (std::size_t i : order) {
    const UtteranceRecord& rec = records[i];
    const std::string tag = rec.utterance_id + ": " + outcomes[i].message;
    if (outcomes[i].skipped) {
      summary.skipped.push_back(tag);
      continue;
    }
    if (!outcomes[i].ok) {
      summary.failed.push_back(tag);
      continue;
    }
    ++summary.written;
    const std::string prefix = rec.utterance_id + "," + ClassName(rec.class_index) + "," +
                               FamilyName(FamilyOf(rec.class_index));
    if (opts.kind == "jitter-shimmer") {
      csv << prefix << "," << rows[i].pulses << "," << FormatNumber(rows[i].jitter) << ","
          << FormatNumber(rows[i].shimmer) << "\n";
    } else if (opts.kind == "bicoherence") {
      csv << prefix << "," << rows[i].windows << "," << FormatNumber(rows[i].mean_mag) << ","
          << FormatNumber(rows[i].max_mag) << "\n";
    }
  }
  if (opts.kind == "jitter-shimmer") {
    WriteTextFile(opts.cache_dir / "jitter_shimmer.csv", csv.str());
  } else if (opts.kind == "bicoherence") {
    WriteTextFile(opts.cache_dir / "bicoherence_summary.csv", csv.str());
  }
  return summary;
}

TrainRunResult RunTrain(const TrainRunOptions& opts) {
  opts.model.Validate();
  const std::vector<UtteranceRecord> records = LoadManifest(opts.data.manifest);
  TrainRunResult result;
  result.split = ResolveSplit(records, opts.split, opts.split_file);
  const auto train_records = PartitionRecords(records, result.split, "train");
  const auto val_records = PartitionRecords(records, result.split, "val");
  const std::vector<Example> train = LoadExamples(opts.data, train_records, opts.model, nullptr);
  const std::vector<Example> val = LoadExamples(opts.data, val_records, opts.model, nullptr);

  AttributionModel model(opts.model);
  result.training = Train(&model, train, val, opts.train);
  fs::create_directories(opts.out_dir);
  SaveCheckpoint(opts.out_dir / "model.vamd", model);
  WriteTextFile(opts.out_dir / "train_log.csv", TrainLogCsv(result.training.history));
  WriteTextFile(opts.out_dir / "split.json", result.split.ToJson());
  return result;
}

EvalReport RunEval(const EvalRunOptions& opts) {
  if (opts.models.empty()) throw InvalidArgument("eval needs at least one model");
  if (opts.models.size() > 2) throw InvalidArgument("eval takes one model, or two with late fusion");
  if (opts.models.size() == 2 && !opts.late_fuse) {
    throw InvalidArgument("two models need --late-fuse weights");
  }
  if (opts.models.size() == 1 && opts.late_fuse) {
    throw InvalidArgument("--late-fuse needs exactly two models");
  }
  std::vector<AttributionModel> models;
  for (const auto& path : opts.models) models.push_back(LoadCheckpoint(path));

  const std::vector<UtteranceRecord> records = LoadManifest(opts.data.manifest);
  const SplitSpec split = ResolveSplit(records, opts.split, opts.split_file);
  const std::vector<UtteranceRecord> part = PartitionRecords(records, split, opts.partition);

  // Features per model; an utterance is scored only if every model accepts it.
  std::vector<std::string> failures;
  std::vector<std::map<std::string, const Example*>> by_model(models.size());
  std::vector<std::vector<Example>> examples(models.size());
  for (std::size_t m = 0; m < models.size(); ++m) {
    std::vector<std::string> f;
    examples[m] = LoadExamples(opts.data, part, models[m].config(), &f);
    for (const auto& e : examples[m]) by_model[m][e.utterance_id] = &e;
    for (auto& msg : f) {
      if (models.size() > 1) msg = ArchitectureLabel(models[m].config().arch) + ": " + msg;
      failures.push_back(msg);
    }
  }
  std::vector<const UtteranceRecord*> scored;
  for (const auto& rec : part) {
    bool all = true;
    for (const auto& bm : by_model) all = all && bm.count(rec.utterance_id);
    if (all) scored.push_back(&rec);
  }

  const std::size_t n = scored.size();
  std::vector<std::vector<Classification>> cls(models.size(), std::vector<Classification>(n));
  const auto outcomes = ForEachUtterance(n, [&](std::size_t i, Outcome*) {
    for (std::size_t m = 0; m < models.size(); ++m) {
      cls[m][i] = models[m].Classify(by_model[m].at(scored[i]->utterance_id)->features,
                                     Execution::kSerial);
    }
  });

  std::vector<PredictionRecord> predictions;
  std::vector<std::string> ids;
  std::vector<std::size_t> truths;
  std::vector<std::vector<std::vector<double>>> embeddings(models.size());
  std::string attention;
  std::vector<std::string> labels;
  for (const auto& m : models) labels.push_back(ArchitectureLabel(m.config().arch));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& id = scored[i]->utterance_id;
    if (!outcomes[i].ok) {
      failures.push_back(id + ": " + outcomes[i].message);
      continue;
    }
    std::vector<double> logits = cls[0][i].logits;
    if (models.size() == 2) {
      logits = LateFuse(cls[0][i].logits, cls[1][i].logits, opts.late_fuse->first,
                        opts.late_fuse->second);
    }
    PredictionRecord p;
    p.utterance_id = id;
    p.truth = scored[i]->class_index;
    p.prediction = Argmax(logits);
    p.spoof_score = SpoofScore(Softmax(logits));
    predictions.push_back(p);
    ids.push_back(id);
    truths.push_back(p.truth);
    for (std::size_t m = 0; m < models.size(); ++m) {
      embeddings[m].push_back(cls[m][i].embedding);
      for (const auto& map : cls[m][i].attention) attention += AttentionLine(id, labels[m], map);
    }
  }
  if (predictions.empty()) throw DataError("no utterance of partition '" + opts.partition +
                                           "' could be scored");

  EvalReport report = SummarizePredictions(predictions);
  report.partition = opts.partition;
  report.train_set_evaluation = opts.partition == "train";
  report.failures = failures;
  if (models.size() == 2) {
    const auto a = models[0].config().arch;
    const auto b = models[1].config().arch;
    if ((a == Architecture::kLpr && b == Architecture::kLms) ||
        (a == Architecture::kLms && b == Architecture::kLpr)) {
      report.model_label = kLateFusionLabel;
    } else {
      report.model_label = labels[0] + "+" + labels[1] + "*";
    }
    report.fused = true;
    report.fusion_components = labels;
    report.fusion_weights = {opts.late_fuse->first, opts.late_fuse->second};
  } else {
    report.model_label = labels[0];
  }

  fs::create_directories(opts.report_dir);
  WriteTextFile(opts.report_dir / "report.json", report.ToJson());
  WriteTextFile(opts.report_dir / "report.txt", report.ToText());
  WriteTextFile(opts.report_dir / "confusion.csv", report.ConfusionCsv());
  if (report.has_roc) WriteTextFile(opts.report_dir / "roc.csv", report.RocCsv());
  std::ostringstream pred_csv;
  pred_csv << "utterance_id,true_class,predicted_class,spoof_score\n";
  for (const auto& p : predictions) {
    pred_csv << p.utterance_id << "," << ClassName(p.truth) << "," << ClassName(p.prediction)
             << "," << FormatNumber(p.spoof_score) << "\n";
  }
  WriteTextFile(opts.report_dir / "predictions.csv", pred_csv.str());
  WriteTextFile(opts.report_dir / "attention.jsonl", attention);
  if (models.size() == 1) {
    WriteTextFile(opts.report_dir / "embeddings.csv", EmbeddingsCsv(ids, truths, embeddings[0]));
  } else {
    for (std::size_t m = 0; m < models.size(); ++m) {
      const std::string name = "embeddings_" + std::to_string(m) + "_" +
                               ArchitectureName(models[m].config().arch) + ".csv";
      WriteTextFile(opts.report_dir / name, EmbeddingsCsv(ids, truths, embeddings[m]));
    }
  }
  return report;
}

}  // namespace spoofprint
