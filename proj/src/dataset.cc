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

#include "distattack/dataset.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "distattack/rng.h"

namespace distattack {
namespace {

void shuffle(std::vector<LabeledSample>& samples, std::uint64_t seed) {
  Rng rng(seed);
  std::shuffle(samples.begin(), samples.end(), rng.engine());
}

}  // namespace

LabeledDataset make_blobs(const BlobsConfig& config) {
  if (config.num_classes < 2) throw std::invalid_argument("blobs need >= 2 classes");
  LabeledDataset data;
  data.shape = config.shape;
  data.num_classes = config.num_classes;
  const std::size_t dim = config.shape.size();

  Rng centers_rng(derive_seed(config.seed, {0}));
  std::vector<Vector> centers(config.num_classes, Vector(dim));
  for (auto& c : centers) {
    for (double& v : c) v = centers_rng.uniform(config.center_lo, config.center_hi);
  }

  Rng rng(derive_seed(config.seed, {1}));
  auto draw = [&](std::size_t label) {
    LabeledSample s{Vector(dim), label};
    for (std::size_t i = 0; i < dim; ++i) {
      s.x[i] = std::clamp(centers[label][i] + config.spread * rng.normal(), 0.0, 1.0);
    }
    return s;
  };
  for (std::size_t c = 0; c < config.num_classes; ++c) {
    for (std::size_t i = 0; i < config.train_per_class; ++i) data.train.push_back(draw(c));
  }
  for (std::size_t c = 0; c < config.num_classes; ++c) {
    for (std::size_t i = 0; i < config.test_per_class; ++i) data.test.push_back(draw(c));
  }
  shuffle(data.train, derive_seed(config.seed, {2}));
  shuffle(data.test, derive_seed(config.seed, {3}));
  return data;
}

LabeledDataset make_moons(const MoonsConfig& config) {
  LabeledDataset data;
  data.shape = GridShape{1, 2, 1};
  data.num_classes = 2;
  Rng rng(derive_seed(config.seed, {0}));
  auto draw = [&](std::size_t label) {
    const double t = std::numbers::pi * rng.uniform();
    double u, v;
    if (label == 0) {
      u = std::cos(t);
      v = std::sin(t);
    } else {
      u = 1.0 - std::cos(t);
      v = 0.5 - std::sin(t);
    }
    u += config.noise * rng.normal();
    v += config.noise * rng.normal();
    // Raw moons span roughly [-1.3, 2.3] x [-0.8, 1.3].
    LabeledSample s{{std::clamp((u + 1.3) / 3.6, 0.0, 1.0),
                     std::clamp((v + 0.8) / 2.1, 0.0, 1.0)},
                    label};
    return s;
  };
  for (std::size_t i = 0; i < config.train_size; ++i) data.train.push_back(draw(i % 2));
  for (std::size_t i = 0; i < config.test_size; ++i) data.test.push_back(draw(i % 2));
  shuffle(data.train, derive_seed(config.seed, {1}));
  shuffle(data.test, derive_seed(config.seed, {2}));
  return data;
}

}  // namespace distattack
