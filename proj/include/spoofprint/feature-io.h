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

#ifndef SPOOFPRINT_FEATURE_IO_H_
#define SPOOFPRINT_FEATURE_IO_H_

#include <filesystem>

#include "spoofprint/features.h"
#include "spoofprint/lp.h"

namespace spoofprint {

// Feature cache, little-endian:
//   "VAFX1" | u8 kind | u32 rows | u32 cols | u32 frame_length |
//   u32 hop_length | u8 window | u32 sample_rate | rows*cols f32 (row-major)
void WriteFeatureCache(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix ReadFeatureCache(const std::filesystem::path& path);

// Exact residual dump, little-endian:
//   "VARS1" | u32 sample_rate | u32 order | u32 frame_length |
//   u32 hop_length | u64 count | count f64
void WriteResidual(const std::filesystem::path& path, const ResidualSignal& r);
ResidualSignal ReadResidual(const std::filesystem::path& path);

// Peak-normalized 16-bit copy for listening.
void WriteResidualWav(const std::filesystem::path& path, const ResidualSignal& r);

// |B(k1, k2)| as a CSV grid: header "k1\k2,0,1,...", one row per k1.
void WriteBicoherenceCsv(const std::filesystem::path& path, const BicoherenceMap& map);

}  // namespace spoofprint

#endif  // SPOOFPRINT_FEATURE_IO_H_
