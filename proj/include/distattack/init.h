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

#ifndef DISTATTACK_INIT_H_
#define DISTATTACK_INIT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <utility>
#include <vector>

#include "distattack/attack.h"
#include "distattack/geometry.h"

namespace distattack {

// mu0 = to_seed(x) + N(0, jitter_sigma^2) noise; jitter 0 is deterministic.
DistParams init_from_input(ConstSpan x, const SeedMap& seed_map, double sigma,
                           double jitter_sigma = 0.0, std::uint64_t seed = 0);

// Predicts the seed-space offset to_seed(x_adv) - to_seed(x) from x.
class Initializer {
 public:
  virtual ~Initializer() = default;
  virtual Vector offset(ConstSpan x) const = 0;
};

// Affine predictor offset(x) = W (x - x_mean) + b.
class RidgeInitializer final : public Initializer {
 public:
  RidgeInitializer(std::size_t input_dim, std::size_t seed_dim, Vector weights,
                   Vector input_mean, Vector bias);

  Vector offset(ConstSpan x) const override;

  std::size_t input_dim() const { return input_dim_; }
  std::size_t seed_dim() const { return seed_dim_; }
  const Vector& weights() const { return weights_; }  // seed_dim x input_dim
  const Vector& input_mean() const { return input_mean_; }
  const Vector& bias() const { return bias_; }

 private:
  std::size_t input_dim_;
  std::size_t seed_dim_;
  Vector weights_;
  Vector input_mean_;
  Vector bias_;
};

inline constexpr double kRidgeLambda = 1e-3;
inline constexpr std::size_t kMinRegressionPairs = 10;

using AdversarialPair = std::pair<Vector, Vector>;  // (x, x_adv)

// Closed-form ridge regression on centered inputs with an unpenalized
// intercept. Requires at least kMinRegressionPairs pairs.
RidgeInitializer fit_regression_initializer(const std::vector<AdversarialPair>& pairs,
                                            const SeedMap& seed_map,
                                            double lambda = kRidgeLambda);

// mu0 = to_seed(x) + initializer.offset(x).
DistParams init_with(const Initializer& initializer, ConstSpan x,
                     const SeedMap& seed_map, double sigma);

// Same versioned JSON family as the model weights, format
// "distattack.initializer".
void save_initializer(const RidgeInitializer& init, const std::filesystem::path& path);
RidgeInitializer load_initializer(const std::filesystem::path& path);

}  // namespace distattack

#endif  // DISTATTACK_INIT_H_
