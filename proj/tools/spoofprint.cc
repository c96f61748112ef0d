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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spoofprint/data.h"
#include "spoofprint/errors.h"
#include "spoofprint/execution.h"
#include "spoofprint/pipeline.h"

namespace fs = std::filesystem;
using namespace spoofprint;

namespace {

// Section-headed echo that `spoofprint --config <echo> <command>` accepts.
void WriteConfigEcho(int workers, const CLI::App& sub, const fs::path& dir) {
  WriteTextFile(dir / "config_echo", "workers=" + std::to_string(workers) + "\n[" +
                                         sub.get_name() + "]\n" + sub.config_to_str(true, false));
}

SplitKind ParseKind(const std::string& s) { return ParseSplitKind(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spoofprint: synthetic speech attribution toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "INI file with option values; flags on the command line win");
  int workers = 0;
  app.add_option("--workers", workers, "Worker threads (0 = number of processors)")
      ->check(CLI::NonNegativeNumber);

  // toygen
  ToygenOptions toygen;
  auto* cmd_toygen = app.add_subcommand("toygen", "Synthesize a toy corpus from a class spec file");
  std::string toygen_spec, toygen_out;
  std::uint64_t toygen_seed = 0;
  cmd_toygen->add_option("--spec", toygen_spec, "Toy corpus INI file")->required();
  cmd_toygen->add_option("--out", toygen_out, "Output directory")->required();
  auto* toygen_seed_opt =
      cmd_toygen->add_option("--seed", toygen_seed, "Overrides the seed of the spec file");

  // extract
  ExtractOptions extract;
  std::string extract_manifest, extract_cache;
  auto* cmd_extract = app.add_subcommand("extract", "Compute per-utterance features");
  cmd_extract->add_option("--manifest", extract_manifest, "Manifest CSV")->required();
  cmd_extract->add_option("--kind", extract.kind, "logmel, lpr, jitter-shimmer or bicoherence")
      ->check(CLI::IsMember({"logmel", "lpr", "jitter-shimmer", "bicoherence"}));
  cmd_extract->add_option("--cache-dir", extract_cache, "Output directory")->required();
  cmd_extract->add_flag("--remove-silence", extract.remove_silence, "Energy VAD before analysis");
  cmd_extract->add_option("--lp-order", extract.lp_order, "LP order")->check(CLI::PositiveNumber);

  // Shared by train and eval.
  struct DataFlags {
    std::string manifest, cache_dir, split = "cs1", split_file;
    bool remove_silence = false;
    std::size_t common_speakers = 10;
    std::uint64_t seed = 0;
  };
  auto add_data = [](CLI::App* cmd, DataFlags* d) {
    cmd->add_option("--manifest", d->manifest, "Manifest CSV")->required();
    cmd->add_option("--cache-dir", d->cache_dir, "Read features from this extract cache");
    cmd->add_flag("--remove-silence", d->remove_silence, "Energy VAD before feature extraction");
    cmd->add_option("--split", d->split, "Generated split: cs1 or cs2")
        ->check(CLI::IsMember({"cs1", "cs2"}));
    cmd->add_option("--split-file", d->split_file, "split.json written by train");
    cmd->add_option("--common-speakers", d->common_speakers, "CS2 speakers shared by train and val");
    cmd->add_option("--seed", d->seed, "Seed of the split, initialization, dropout and shuffling");
  };
  auto make_data = [](const DataFlags& d) {
    DataOptions o;
    o.manifest = d.manifest;
    if (!d.cache_dir.empty()) o.cache_dir = d.cache_dir;
    o.remove_silence = d.remove_silence;
    return o;
  };
  auto make_split = [](const DataFlags& d) {
    SplitOptions s;
    s.kind = ParseKind(d.split);
    s.seed = d.seed;
    s.common_speakers = d.common_speakers;
    return s;
  };

  // train
  DataFlags train_data;
  TrainRunOptions train;
  std::string train_arch = "lpr", train_out;
  auto* cmd_train = app.add_subcommand("train", "Train a classifier");
  add_data(cmd_train, &train_data);
  cmd_train->add_option("--arch", train_arch, "lpr, lms or fuse-intermediate")
      ->check(CLI::IsMember({"lpr", "lms", "fuse-intermediate"}));
  cmd_train->add_option("--out", train_out, "Run directory")->required();
  cmd_train->add_option("--epochs", train.train.epochs, "Epochs")->check(CLI::PositiveNumber);
  cmd_train->add_option("--batch-size", train.train.batch_size, "Minibatch size")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--lr", train.train.lr, "Adam learning rate")->check(CLI::PositiveNumber);
  cmd_train->add_option("--heads", train.model.num_heads, "Attention heads")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--dropout", train.model.dropout, "Dropout probability")
      ->check(CLI::Range(0.0, 0.99));
  cmd_train->add_option("--lp-order", train.model.lp_order, "LP order")
      ->check(CLI::PositiveNumber);

  // eval
  DataFlags eval_data;
  EvalRunOptions eval;
  std::vector<std::string> eval_models;
  std::vector<double> eval_fuse;
  std::string eval_report;
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate one model or a late fusion of two");
  add_data(cmd_eval, &eval_data);
  cmd_eval->add_option("--partition", eval.partition, "train, val or eval")
      ->check(CLI::IsMember({"train", "val", "eval"}));
  cmd_eval->add_option("--model", eval_models, "Checkpoint (model.vamd); repeat for fusion")
      ->required();
  cmd_eval->add_option("--late-fuse", eval_fuse, "Logit weights of the two models")
      ->expected(2);
  cmd_eval->add_option("--report-dir", eval_report, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    SetNumThreads(workers);
    if (cmd_toygen->parsed()) {
      toygen.spec_file = toygen_spec;
      toygen.out_dir = toygen_out;
      if (toygen_seed_opt->count()) {
        toygen.seed = toygen_seed;
      } else {
        // Echo the seed actually used.
        toygen_seed_opt->default_str(std::to_string(LoadToyConfig(toygen.spec_file).options.seed));
      }
      const auto records = RunToygen(toygen);
      WriteConfigEcho(workers, *cmd_toygen, toygen.out_dir);
      std::cout << "wrote " << records.size() << " utterances to " << toygen.out_dir.string()
                << "\n";
    } else if (cmd_extract->parsed()) {
      extract.manifest = extract_manifest;
      extract.cache_dir = extract_cache;
      const ExtractSummary s = RunExtract(extract);
      WriteConfigEcho(workers, *cmd_extract, extract.cache_dir);
      for (const auto& m : s.skipped) std::cerr << "warning: skipped " << m << "\n";
      for (const auto& m : s.failed) std::cerr << "error: " << m << "\n";
      std::cout << "extracted " << s.written << " utterances (" << s.skipped.size()
                << " skipped, " << s.failed.size() << " failed)\n";
      if (!s.failed.empty()) return 2;
    } else if (cmd_train->parsed()) {
      train.data = make_data(train_data);
      train.split = make_split(train_data);
      if (!train_data.split_file.empty()) train.split_file = train_data.split_file;
      train.model.arch = ParseArchitecture(train_arch);
      train.model.seed = train_data.seed;
      train.train.seed = train_data.seed;
      train.out_dir = train_out;
      train.train.on_epoch = [](const EpochStats& s) {
        std::fprintf(stderr, "epoch %zu: train loss %.4f acc %.2f%% | val loss %.4f acc %.2f%%\n",
                     s.epoch, s.train_loss, s.train_accuracy, s.val_loss, s.val_accuracy);
      };
      const TrainRunResult r = RunTrain(train);
      WriteConfigEcho(workers, *cmd_train, train.out_dir);
      std::cout << "best epoch " << r.training.best_epoch << ", val accuracy "
                << r.training.best_val_accuracy << " %\n";
    } else if (cmd_eval->parsed()) {
      eval.data = make_data(eval_data);
      eval.split = make_split(eval_data);
      if (!eval_data.split_file.empty()) eval.split_file = eval_data.split_file;
      for (const auto& m : eval_models) eval.models.push_back(m);
      if (!eval_fuse.empty()) eval.late_fuse = std::make_pair(eval_fuse[0], eval_fuse[1]);
      eval.report_dir = eval_report;
      const EvalReport report = RunEval(eval);
      WriteConfigEcho(workers, *cmd_eval, eval.report_dir);
      std::cout << report.ToText();
      for (const auto& f : report.failures) std::cerr << "error: " << f << "\n";
      if (!report.failures.empty()) return 2;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
