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

#include "spoofprint/feature-io.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "spoofprint/binary-io.h"
#include "spoofprint/errors.h"

namespace spoofprint {

void WriteFeatureCache(const std::filesystem::path& path, const FeatureMatrix& m) {
  BinaryWriter out(path);
  out.Magic("VAFX1");
  out.U8(static_cast<std::uint8_t>(m.kind));
  out.U32(static_cast<std::uint32_t>(m.data.rows()));
  out.U32(static_cast<std::uint32_t>(m.data.cols()));
  out.U32(static_cast<std::uint32_t>(m.frame_grid.frame_length));
  out.U32(static_cast<std::uint32_t>(m.frame_grid.hop_length));
  out.U8(static_cast<std::uint8_t>(m.frame_grid.window));
  out.U32(static_cast<std::uint32_t>(m.sample_rate));
  for (double v : m.data.data()) out.F32(static_cast<float>(v));
  out.Close();
}

FeatureMatrix ReadFeatureCache(const std::filesystem::path& path) {
  BinaryReader in(path);
  in.ExpectMagic("VAFX1");
  FeatureMatrix m;
  const std::uint8_t kind = in.U8();
  if (kind != static_cast<std::uint8_t>(FeatureKind::kLogMel) &&
      kind != static_cast<std::uint8_t>(FeatureKind::kLearnedResidual)) {
    throw DataError(path.string() + ": unknown feature kind " + std::to_string(kind));
  }
  m.kind = static_cast<FeatureKind>(kind);
  const std::uint32_t rows = in.U32();
  const std::uint32_t cols = in.U32();
  m.frame_grid.frame_length = in.U32();
  m.frame_grid.hop_length = in.U32();
  const std::uint8_t window = in.U8();
  if (window > static_cast<std::uint8_t>(WindowType::kHamming)) {
    throw DataError(path.string() + ": unknown window code");
  }
  m.frame_grid.window = static_cast<WindowType>(window);
  m.sample_rate = static_cast<int>(in.U32());
  m.data = Matrix(rows, cols);
  for (double& v : m.data.data()) v = in.F32();
  in.ExpectEnd();
  return m;
}

void WriteResidual(const std::filesystem::path& path, const ResidualSignal& r) {
  BinaryWriter out(path);
  out.Magic("VARS1");
  out.U32(static_cast<std::uint32_t>(r.sample_rate));
  out.U32(static_cast<std::uint32_t>(r.order));
  out.U32(static_cast<std::uint32_t>(r.frame_grid.frame_length));
  out.U32(static_cast<std::uint32_t>(r.frame_grid.hop_length));
  out.U64(r.samples.size());
  for (double v : r.samples) out.F64(v);
  out.Close();
}

ResidualSignal ReadResidual(const std::filesystem::path& path) {
  BinaryReader in(path);
  in.ExpectMagic("VARS1");
  ResidualSignal r;
  r.sample_rate = static_cast<int>(in.U32());
  r.order = in.U32();
  r.frame_grid.frame_length = in.U32();
  r.frame_grid.hop_length = in.U32();
  r.frame_grid.window = WindowType::kHamming;
  const std::uint64_t count = in.U64();
  r.samples.resize(count);
  for (double& v : r.samples) v = in.F64();
  in.ExpectEnd();
  return r;
}

void WriteResidualWav(const std::filesystem::path& path, const ResidualSignal& r) {
  Waveform w;
  w.sample_rate = r.sample_rate;
  w.samples = r.samples;
  WriteWav(path, PeakNormalized(w));
}

void WriteBicoherenceCsv(const std::filesystem::path& path, const BicoherenceMap& map) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  const std::size_t dim = map.dim();
  out << "k1\\k2";
  for (std::size_t k2 = 0; k2 < dim; ++k2) out << ',' << k2;
  out << '\n';
  char buf[32];
  for (std::size_t k1 = 0; k1 < dim; ++k1) {
    out << k1;
    for (std::size_t k2 = 0; k2 < dim; ++k2) {
      std::snprintf(buf, sizeof(buf), ",%.6g", std::abs(map.at(k1, k2)));
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace spoofprint
