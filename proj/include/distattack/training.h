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

#ifndef DISTATTACK_TRAINING_H_
#define DISTATTACK_TRAINING_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "distattack/dataset.h"
#include "distattack/models.h"

namespace distattack {

struct TrainConfig {
  std::vector<std::size_t> hidden{32};
  Activation activation = Activation::kRelu;
  int quantize_levels = 0;
  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  double learning_rate = 0.1;
  std::uint64_t seed = 1;
};

struct TrainResult {
  MlpSpec spec;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double final_loss = 0.0;  // mean training cross-entropy of the last epoch
};

// Minibatch SGD on softmax cross-entropy with analytic backprop. Quantized
// activations are trained with the straight-through ReLU gradient.
// Deterministic given config.seed.
TrainResult train_mlp(const LabeledDataset& data, const TrainConfig& config);

double accuracy(const BlackboxModel& model,
                const std::vector<LabeledSample>& samples,
                std::uint64_t seed = 0);

}  // namespace distattack

#endif  // DISTATTACK_TRAINING_H_
