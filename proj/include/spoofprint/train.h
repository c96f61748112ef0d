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

#ifndef SPOOFPRINT_TRAIN_H_
#define SPOOFPRINT_TRAIN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spoofprint/execution.h"
#include "spoofprint/model.h"

namespace spoofprint {

struct Example {
  std::string utterance_id;
  std::size_t label = 0;
  UtteranceFeatures features;
};

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;  // percent, dropout active
  double val_loss = 0.0;
  double val_accuracy = 0.0;  // percent, inference mode
};

struct TrainOptions {
  std::size_t epochs = 30;
  std::size_t batch_size = 16;
  double lr = 1e-3;
  std::uint64_t seed = 0;
  Execution exec = Execution::kParallel;
  std::function<void(const EpochStats&)> on_epoch;
};

struct TrainResult {
  std::vector<EpochStats> history;
  std::size_t best_epoch = 0;
  double best_val_accuracy = 0.0;
};

struct LossAccuracy {
  double loss = 0.0;
  double accuracy = 0.0;
};

// Mean cross-entropy and accuracy in inference mode.
LossAccuracy Evaluate(const AttributionModel& model, std::span<const Example> examples,
                      std::size_t batch_size, Execution exec = Execution::kParallel);

// Adam on shuffled minibatches. After the call the model holds the
// parameters of the epoch with the best validation accuracy (ties go to the
// lower validation loss, then the earlier epoch). A non-finite loss throws
// NumericalError naming the epoch and batch.
TrainResult Train(AttributionModel* model, std::span<const Example> train,
                  std::span<const Example> val, const TrainOptions& opts);

// "epoch,train_loss,train_accuracy,val_loss,val_accuracy" rows.
std::string TrainLogCsv(std::span<const EpochStats> history);

}  // namespace spoofprint

#endif  // SPOOFPRINT_TRAIN_H_
