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

#ifndef DISTATTACK_BATCH_KERNELS_H_
#define DISTATTACK_BATCH_KERNELS_H_

// Data-parallel inner loops of the search-distribution attacks. Each kernel
// has a serial reference implementation and an OpenMP one; both produce
// bitwise identical results because every per-sample random stream is
// derived from (seed, sample index) and every reduction runs in a fixed
// order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "distattack/objective.h"
#include "distattack/types.h"

namespace distattack {

enum class Execution { kSerial, kParallel };

struct BatchRequest {
  ConstSpan center;
  double sigma = 0.1;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  bool antithetic = false;  // samples 2k and 2k+1 share noise with opposite signs
};

struct BatchResult {
  std::vector<Vector> noise;       // standard-normal directions epsilon_i
  std::vector<Vector> candidates;  // queried inputs
  Vector losses;
  std::vector<std::uint8_t> adversarial;
  std::vector<std::uint64_t> query_seeds;

  std::size_t queries() const { return losses.size(); }
  std::optional<std::size_t> first_adversarial() const;
  double mean_loss() const;
};

// Standard-normal direction for sample `index` of a batch.
Vector draw_noise(std::uint64_t seed, std::size_t index, std::size_t dim,
                  bool antithetic);

std::uint64_t query_seed_for(std::uint64_t seed, std::size_t index);

BatchResult evaluate_batch_serial(const AttackObjective& objective,
                                  const BatchRequest& request);
BatchResult evaluate_batch_parallel(const AttackObjective& objective,
                                    const BatchRequest& request);
BatchResult evaluate_batch(const AttackObjective& objective,
                           const BatchRequest& request, Execution execution);

// scale * sum_i weights[i] * noise[i]. With `antithetic`, pairs are combined
// as (w_2k - w_2k+1) * noise[2k] so that equal paired weights cancel exactly.
Vector weighted_noise_sum_serial(const std::vector<Vector>& noise,
                                 ConstSpan weights, double scale,
                                 bool antithetic);
Vector weighted_noise_sum_parallel(const std::vector<Vector>& noise,
                                   ConstSpan weights, double scale,
                                   bool antithetic);
Vector weighted_noise_sum(const std::vector<Vector>& noise, ConstSpan weights,
                          double scale, bool antithetic, Execution execution);

}  // namespace distattack

#endif  // DISTATTACK_BATCH_KERNELS_H_
