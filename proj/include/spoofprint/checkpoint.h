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

#ifndef SPOOFPRINT_CHECKPOINT_H_
#define SPOOFPRINT_CHECKPOINT_H_

#include <filesystem>

#include "spoofprint/model.h"

namespace spoofprint {

// "VAMD1", the model configuration as JSON, then every parameter as
// (name, rank, dims, count, float32 values) in Parameters() order.
void SaveCheckpoint(const std::filesystem::path& path, const AttributionModel& model);

// Rebuilds the model from the stored configuration and restores the exact
// parameter values. Missing, extra or misshapen blobs are DataErrors.
AttributionModel LoadCheckpoint(const std::filesystem::path& path);

}  // namespace spoofprint

#endif  // SPOOFPRINT_CHECKPOINT_H_
