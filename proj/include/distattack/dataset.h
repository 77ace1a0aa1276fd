// Copyright 2026 The distattack Authors.
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

#ifndef DISTATTACK_DATASET_H_
#define DISTATTACK_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "distattack/geometry.h"
#include "distattack/types.h"

namespace distattack {

struct LabeledSample {
  Vector x;
  std::size_t label = 0;
};

struct LabeledDataset {
  GridShape shape;  // layout of each input
  std::size_t num_classes = 0;
  std::vector<LabeledSample> train;
  std::vector<LabeledSample> test;

  std::size_t input_dim() const { return shape.size(); }
};

// Isotropic Gaussian blobs around class prototypes drawn uniformly in
// [center_lo, center_hi]^d, clamped into the unit box. With the default
// 8x8x1 shape each input is a tiny single-channel image.
struct BlobsConfig {
  GridShape shape{8, 8, 1};
  std::size_t num_classes = 4;
  std::size_t train_per_class = 200;
  std::size_t test_per_class = 100;
  double spread = 0.12;
  double center_lo = 0.2;
  double center_hi = 0.8;
  std::uint64_t seed = 1;
};

LabeledDataset make_blobs(const BlobsConfig& config);

// Two interleaved half circles rescaled into [0,1]^2.
struct MoonsConfig {
  std::size_t train_size = 400;
  std::size_t test_size = 200;
  double noise = 0.08;
  std::uint64_t seed = 1;
};

LabeledDataset make_moons(const MoonsConfig& config);

}  // namespace distattack

#endif  // DISTATTACK_DATASET_H_
