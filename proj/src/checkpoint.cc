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

#include "spoofprint/checkpoint.h"

#include <cstdint>
#include <string>

#include "spoofprint/binary-io.h"
#include "spoofprint/errors.h"

namespace spoofprint {

void SaveCheckpoint(const std::filesystem::path& path, const AttributionModel& model) {
  BinaryWriter out(path);
  out.Magic("VAMD1");
  out.String(model.config().ToJson());
  const auto params = model.Parameters();
  out.U32(static_cast<std::uint32_t>(params.size()));
  for (const auto& p : params) {
    out.String(p.name);
    out.U32(static_cast<std::uint32_t>(p.tensor.rank()));
    for (std::size_t d : p.tensor.shape()) out.U32(static_cast<std::uint32_t>(d));
    out.U64(p.tensor.numel());
    for (float v : p.tensor.data()) out.F32(v);
  }
  out.Close();
}

AttributionModel LoadCheckpoint(const std::filesystem::path& path) {
  BinaryReader in(path);
  in.ExpectMagic("VAMD1");
  AttributionModel model(ModelConfig::FromJson(in.String()));
  auto params = model.Parameters();
  const std::uint32_t count = in.U32();
  if (count != params.size()) {
    throw DataError(path.string() + ": checkpoint holds " + std::to_string(count) +
                    " parameters, configuration expects " + std::to_string(params.size()));
  }
  for (auto& p : params) {
    const std::string name = in.String();
    if (name != p.name) {
      throw DataError(path.string() + ": expected parameter " + p.name + ", found " + name);
    }
    const std::uint32_t rank = in.U32();
    if (rank != p.tensor.rank()) throw DataError(path.string() + ": rank mismatch for " + name);
    for (std::size_t i = 0; i < rank; ++i) {
      if (in.U32() != p.tensor.dim(i)) {
        throw DataError(path.string() + ": shape mismatch for " + name);
      }
    }
    if (in.U64() != p.tensor.numel()) throw DataError(path.string() + ": size mismatch for " + name);
    for (float& v : p.tensor.data()) v = in.F32();
  }
  in.ExpectEnd();
  return model;
}

}  // namespace spoofprint
