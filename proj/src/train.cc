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

#include "spoofprint/train.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spoofprint/data.h"
#include "spoofprint/errors.h"
#include "spoofprint/eval.h"
#include "spoofprint/nn/adam.h"
#include "spoofprint/nn/ops.h"

namespace spoofprint {
namespace {

std::size_t Argmax(std::span<const float> row) {
  return static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
}

Batch BatchOf(std::span<const Example> examples, std::span<const std::size_t> indices,
              const ModelConfig& config, std::vector<std::size_t>* labels) {
  std::vector<const UtteranceFeatures*> items;
  labels->clear();
  for (std::size_t i : indices) {
    items.push_back(&examples[i].features);
    labels->push_back(examples[i].label);
  }
  return MakeBatch(items, config);
}

}  // namespace

LossAccuracy Evaluate(const AttributionModel& model, std::span<const Example> examples,
                      std::size_t batch_size, Execution exec) {
  if (examples.empty()) throw InvalidArgument("evaluation set is empty");
  if (batch_size == 0) throw InvalidArgument("batch size must be positive");
  nn::NoGradGuard no_grad;
  double loss = 0.0;
  std::size_t correct = 0;
  std::vector<std::size_t> indices, labels;
  for (std::size_t start = 0; start < examples.size(); start += batch_size) {
    indices.clear();
    for (std::size_t i = start; i < std::min(examples.size(), start + batch_size); ++i) {
      indices.push_back(i);
    }
    const Batch batch = BatchOf(examples, indices, model.config(), &labels);
    const ForwardResult r = model.Forward(batch, false, nullptr, exec);
    const nn::Tensor ce = nn::CrossEntropy(r.logits, std::span<const std::size_t>(labels));
    loss += static_cast<double>(ce.item()) * static_cast<double>(labels.size());
    const std::size_t K = r.logits.dim(1);
    for (std::size_t n = 0; n < labels.size(); ++n) {
      correct += Argmax(r.logits.data().subspan(n * K, K)) == labels[n];
    }
  }
  return {loss / static_cast<double>(examples.size()),
          100.0 * static_cast<double>(correct) / static_cast<double>(examples.size())};
}

TrainResult Train(AttributionModel* model, std::span<const Example> train,
                  std::span<const Example> val, const TrainOptions& opts) {
  if (train.empty()) throw DataError("training set is empty");
  if (val.empty()) throw DataError("validation set is empty");
  if (opts.epochs == 0 || opts.batch_size == 0) {
    throw InvalidArgument("epochs and batch size must be positive");
  }
  std::vector<nn::Tensor> params;
  for (const auto& p : model->Parameters()) params.push_back(p.tensor);
  nn::AdamOptions adam_opts;
  adam_opts.lr = opts.lr;
  nn::Adam adam(params, adam_opts);
  nn::Generator dropout_gen(MixSeed(opts.seed, 0xD0));

  TrainResult result;
  std::vector<std::vector<float>> best_params;
  double best_loss = 0.0;
  std::vector<std::size_t> order(train.size()), labels;
  for (std::size_t epoch = 1; epoch <= opts.epochs; ++epoch) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    nn::Generator shuffle_gen(MixSeed(opts.seed, 0x5F, epoch));
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_gen.Below(i)]);
    }
    double loss_sum = 0.0;
    std::size_t correct = 0;
    std::size_t batch_no = 0;
    for (std::size_t start = 0; start < order.size(); start += opts.batch_size, ++batch_no) {
      const std::size_t end = std::min(order.size(), start + opts.batch_size);
      const std::span<const std::size_t> idx(order.data() + start, end - start);
      const Batch batch = BatchOf(train, idx, model->config(), &labels);
      adam.ZeroGrad();
      const ForwardResult r = model->Forward(batch, true, &dropout_gen, opts.exec);
      nn::Tensor loss = nn::CrossEntropy(r.logits, std::span<const std::size_t>(labels));
      const double value = loss.item();
      if (!std::isfinite(value)) {
        throw NumericalError("non-finite training loss at epoch " + std::to_string(epoch) +
                             ", batch " + std::to_string(batch_no + 1));
      }
      loss.Backward();
      adam.Step();
      loss_sum += value * static_cast<double>(labels.size());
      const std::size_t K = r.logits.dim(1);
      for (std::size_t n = 0; n < labels.size(); ++n) {
        correct += Argmax(r.logits.data().subspan(n * K, K)) == labels[n];
      }
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = loss_sum / static_cast<double>(train.size());
    stats.train_accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(train.size());
    const LossAccuracy v = Evaluate(*model, val, opts.batch_size, opts.exec);
    if (!std::isfinite(v.loss)) {
      throw NumericalError("non-finite validation loss at epoch " + std::to_string(epoch));
    }
    stats.val_loss = v.loss;
    stats.val_accuracy = v.accuracy;
    result.history.push_back(stats);
    const bool better = result.best_epoch == 0 || v.accuracy > result.best_val_accuracy ||
                        (v.accuracy == result.best_val_accuracy && v.loss < best_loss);
    if (better) {
      result.best_epoch = epoch;
      result.best_val_accuracy = v.accuracy;
      best_loss = v.loss;
      best_params = model->SnapshotParameters();
    }
    if (opts.on_epoch) opts.on_epoch(stats);
  }
  model->RestoreParameters(best_params);
  return result;
}

std::string TrainLogCsv(std::span<const EpochStats> history) {
  std::ostringstream out;
  out << "epoch,train_loss,train_accuracy,val_loss,val_accuracy\n";
  for (const auto& s : history) {
    out << s.epoch << "," << FormatNumber(s.train_loss) << "," << FormatNumber(s.train_accuracy)
        << "," << FormatNumber(s.val_loss) << "," << FormatNumber(s.val_accuracy) << "\n";
  }
  return out.str();
}

}  // namespace spoofprint
