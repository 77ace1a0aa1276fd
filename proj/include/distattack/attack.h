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

#ifndef DISTATTACK_ATTACK_H_
#define DISTATTACK_ATTACK_H_

// Learns an isotropic Gaussian N(mu, sigma^2) over seeds whose transformed
// and projected samples are misclassified. Each iteration draws b
// directions, evaluates the loss of every projected sample, z-scores the
// losses and moves the mean along the natural-gradient estimate:
//
//   mu <- mu - eta / (b * sigma) * sum_i zscore(f)_i * eps_i

#include <cstddef>
#include <cstdint>
#include <optional>

#include "distattack/batch_kernels.h"
#include "distattack/geometry.h"
#include "distattack/objective.h"

namespace distattack {

struct DistParams {
  Vector mu;
  double sigma = 0.1;
};

struct AttackConfig {
  NormBudget budget{Norm::kLinf, 0.031};
  std::size_t max_iterations = 600;
  std::size_t batch_size = 300;
  double learning_rate = 0.008;
  double sigma = 0.1;  // sigma^2 = 0.01
  // Bandwidth of the input-space baselines (sign-step attacks that search
  // directly over pixels). Seed-space and input-space bandwidths are in
  // different units, so they are configured separately.
  double input_sigma = 0.001;
  std::uint64_t sample_seed = 0;
  bool early_stop = true;
  bool antithetic = false;
  Execution execution = Execution::kParallel;

  // Throws std::invalid_argument unless T >= 1, b >= 2, eta > 0, both
  // bandwidths > 0 and tau >= 0.
  void validate() const;
};

struct AttackOutcome {
  bool success = false;
  std::optional<Vector> adversarial;
  std::uint64_t adversarial_query_seed = 0;  // seed under which it was verified
  std::size_t queries = 0;
  std::size_t iterations = 0;
  std::optional<std::size_t> first_success_iter;
  Vector loss_trace;  // batch-mean loss per executed iteration
  DistParams final_params;
  double wall_seconds = 0.0;

  // Compares everything except wall_seconds.
  bool operator==(const AttackOutcome& other) const;
};

// (f - mean) / std with the population standard deviation; all zeros when
// the losses are constant. Results are rounded to single precision, which
// makes the shaped values identical for f and a*f + c (a > 0) despite the
// double rounding of the transformed losses.
Vector zscore(ConstSpan losses);

struct StepResult {
  DistParams next;
  BatchResult batch;
  Vector shaped;  // z-scored losses
};

std::uint64_t iteration_seed(std::uint64_t sample_seed, std::size_t iteration);

// One iteration of the mean update.
StepResult distribution_step(const DistParams& params,
                             const AttackObjective& objective,
                             const AttackConfig& config, std::size_t iteration);

// Monte-Carlo estimate of E f(candidate(mu + sigma * eps)).
double smoothed_objective(const DistParams& params,
                          const AttackObjective& objective,
                          std::size_t n_samples, std::uint64_t seed,
                          Execution execution = Execution::kParallel);

// (1 / (b * sigma)) * sum_i f_i eps_i over an evaluated batch: the plain NES
// estimate of the gradient of the smoothed objective w.r.t. mu.
Vector nes_gradient(const BatchResult& batch, double sigma, bool antithetic,
                    Execution execution = Execution::kParallel);

// Runs up to max_iterations steps. With early_stop the run halts at the
// first iteration whose batch holds an adversarial sample, and that sample is
// returned. queries = batch_size * iterations.
AttackOutcome run_distribution_attack(const AttackObjective& objective,
                                      const AttackConfig& config,
                                      const DistParams& init);

AttackOutcome run_distribution_attack(const BlackboxModel& model, ConstSpan x,
                                      std::size_t label, const SeedMap& seed_map,
                                      const AttackConfig& config,
                                      const DistParams& init);

}  // namespace distattack

#endif  // DISTATTACK_ATTACK_H_
