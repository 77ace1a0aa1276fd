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

#ifndef DISTATTACK_DESK_H_
#define DISTATTACK_DESK_H_

// The desk-scale benchmark shared by the CLI, the tests and the acceptance
// suite: an 8x8 single-channel blob dataset, a one-hidden-layer victim and
// attack settings calibrated so the undefended victim is attackable.

#include <cstdint>
#include <memory>

#include "distattack/attack.h"
#include "distattack/dataset.h"
#include "distattack/models.h"
#include "distattack/training.h"

namespace distattack::desk {

// Linf budget in [0,1] pixel units, calibrated on the blob dataset (the
// CIFAR-scale 0.031 is far inside every class at this dimension).
inline constexpr double kLinfTau = 0.2;
inline constexpr int kQuantizeLevels = 8;
inline constexpr double kInputNoiseAmplitude = 0.1;

BlobsConfig blobs(std::uint64_t seed);
TrainConfig training(std::uint64_t seed);

// T = 200, b = 100, sigma = 0.1, eta = 0.03 under the desk budget.
AttackConfig attack_config();

struct Setup {
  LabeledDataset data;
  TrainResult trained;
  std::shared_ptr<const MlpModel> model;
};

Setup make_setup(std::uint64_t seed);

}  // namespace distattack::desk

#endif  // DISTATTACK_DESK_H_
