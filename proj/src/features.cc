// src/features.cc

// Copyright 2026  ttslabel authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "ttslabel/features.h"

#include <cmath>
#include <fstream>

#include "ttslabel/binary_io.h"

namespace ttslabel {

bool IsValid(const AcousticFeatures &x) {
  if (x.n_frames < 1 || x.dim < 1) return false;
  if (x.data.size() != static_cast<std::size_t>(x.n_frames) * x.dim) return false;
  for (float v : x.data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void WriteFeatures(const std::filesystem::path &path, const AcousticFeatures &x) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  WriteU32(out, static_cast<std::uint32_t>(x.n_frames));
  WriteU32(out, static_cast<std::uint32_t>(x.dim));
  for (float v : x.data) WriteF32(out, v);
}

AcousticFeatures ReadFeatures(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  const auto n = ReadU32(in);
  const auto d = ReadU32(in);
  if (n > (1u << 20) || d > 4096)
    throw Error(ErrorCode::kFormat, "implausible feature header in " + path.string());
  AcousticFeatures x(static_cast<int>(n), static_cast<int>(d));
  for (auto &v : x.data) v = ReadF32(in);
  return x;
}

}  // namespace ttslabel
