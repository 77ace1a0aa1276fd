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

#include "distattack/desk.h"

namespace distattack::desk {

BlobsConfig blobs(std::uint64_t seed) {
  BlobsConfig config;
  config.seed = seed;
  return config;
}

TrainConfig training(std::uint64_t seed) {
  TrainConfig config;
  config.seed = seed;
  return config;
}

AttackConfig attack_config() {
  AttackConfig config;
  config.budget = {Norm::kLinf, kLinfTau};
  config.max_iterations = 200;
  config.batch_size = 100;
  config.learning_rate = 0.03;
  config.sigma = 0.1;
  return config;
}

Setup make_setup(std::uint64_t seed) {
  Setup setup;
  setup.data = make_blobs(blobs(seed));
  setup.trained = train_mlp(setup.data, training(seed));
  setup.model = std::make_shared<MlpModel>(setup.trained.spec);
  return setup;
}

}  // namespace distattack::desk
