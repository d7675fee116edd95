// include/ttslabel/features.h

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

#ifndef TTSLABEL_FEATURES_H_
#define TTSLABEL_FEATURES_H_

#include <filesystem>
#include <vector>

namespace ttslabel {

// N frames x D real-valued features, row-major.
struct AcousticFeatures {
  int n_frames = 0;
  int dim = 0;
  std::vector<float> data;

  AcousticFeatures() = default;
  AcousticFeatures(int n, int d)
      : n_frames(n), dim(d), data(static_cast<std::size_t>(n) * d, 0.0f) {}

  float &at(int frame, int d) { return data[static_cast<std::size_t>(frame) * dim + d]; }
  float at(int frame, int d) const {
    return data[static_cast<std::size_t>(frame) * dim + d];
  }
  const float *row(int frame) const {
    return data.data() + static_cast<std::size_t>(frame) * dim;
  }
  bool operator==(const AcousticFeatures &) const = default;
};

// N >= 1 and every value finite.
bool IsValid(const AcousticFeatures &x);

// Header: uint32 N, uint32 D; then N*D float32, all little-endian.
void WriteFeatures(const std::filesystem::path &path, const AcousticFeatures &x);
AcousticFeatures ReadFeatures(const std::filesystem::path &path);

}  // namespace ttslabel

#endif  // TTSLABEL_FEATURES_H_
