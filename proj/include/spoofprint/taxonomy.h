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

#ifndef SPOOFPRINT_TAXONOMY_H_
#define SPOOFPRINT_TAXONOMY_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace spoofprint {

// 17 synthetic classes plus Natural. A04/A16 and A06/A19 share a class, so
// the nineteen ASVspoof 2019 LA attack ids collapse onto 17 indices.
inline constexpr std::size_t kNumClasses = 18;
inline constexpr std::size_t kNaturalClass = 17;

enum class GeneratorFamily : int {
  kWaveNet = 0,
  kWorld,
  kWaveformConcatenation,
  kSpectralFilteringOla,
  kNeuralSourceFilter,
  kVocaine,
  kWaveRnn,
  kGriffinLim,
  kWaveformFiltering,
  kStraight,
  kMfccVocoder,
  kNatural,
};
inline constexpr std::size_t kNumFamilies = 12;

// Canonical class name, e.g. "A01", "A04/A16", "Natural".
std::string ClassName(std::size_t class_index);

// Accepts attack ids ("A16"), merged names ("A04/A16") and "Natural"
// (case-insensitive, "bonafide" is an alias). Returns false for unknown labels.
bool TryParseClass(std::string_view label, std::size_t* class_index);
std::size_t ParseClass(std::string_view label);  // throws DataError

GeneratorFamily FamilyOf(std::size_t class_index);
std::string FamilyName(GeneratorFamily family);

}  // namespace spoofprint

#endif  // SPOOFPRINT_TAXONOMY_H_
