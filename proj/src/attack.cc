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

#include "distattack/attack.h"

#include <chrono>
#include <cmath>

#include "distattack/rng.h"

namespace distattack {

void AttackConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (batch_size < 2) throw std::invalid_argument("batch_size must be >= 2");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (!(input_sigma > 0.0)) throw std::invalid_argument("input_sigma must be > 0");
  if (!(budget.tau >= 0.0)) throw std::invalid_argument("budget tau must be >= 0");
}

bool AttackOutcome::operator==(const AttackOutcome& o) const {
  return success == o.success && adversarial == o.adversarial &&
         adversarial_query_seed == o.adversarial_query_seed &&
         queries == o.queries && iterations == o.iterations &&
         first_success_iter == o.first_success_iter &&
         loss_trace == o.loss_trace && final_params.mu == o.final_params.mu &&
         final_params.sigma == o.final_params.sigma;
}

Vector zscore(ConstSpan losses) {
  const double n = static_cast<double>(losses.size());
  Vector out(losses.size(), 0.0);
  if (losses.empty()) return out;
  double mean = 0.0;
  for (double f : losses) mean += f;
  mean /= n;
  double var = 0.0;
  for (double f : losses) var += (f - mean) * (f - mean);
  const double std_dev = std::sqrt(var / n);
  if (!(std_dev > 0.0)) return out;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    out[i] = static_cast<double>(static_cast<float>((losses[i] - mean) / std_dev));
  }
  return out;
}

std::uint64_t iteration_seed(std::uint64_t sample_seed, std::size_t iteration) {
  return derive_seed(sample_seed, {0x69746572ULL, iteration});
}

StepResult distribution_step(const DistParams& params,
                             const AttackObjective& objective,
                             const AttackConfig& config, std::size_t iteration) {
  const BatchRequest request{params.mu, params.sigma, config.batch_size,
                             iteration_seed(config.sample_seed, iteration),
                             config.antithetic};
  StepResult step;
  step.batch = evaluate_batch(objective, request, config.execution);
  step.shaped = zscore(step.batch.losses);
  const double scale = -config.learning_rate /
                       (static_cast<double>(config.batch_size) * params.sigma);
  const Vector delta = weighted_noise_sum(step.batch.noise, step.shaped, scale,
                                          config.antithetic, config.execution);
  step.next.sigma = params.sigma;
  step.next.mu = params.mu;
  for (std::size_t j = 0; j < delta.size(); ++j) step.next.mu[j] += delta[j];
  return step;
}

double smoothed_objective(const DistParams& params,
                          const AttackObjective& objective,
                          std::size_t n_samples, std::uint64_t seed,
                          Execution execution) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const BatchRequest request{params.mu, params.sigma, n_samples, seed, false};
  return evaluate_batch(objective, request, execution).mean_loss();
}

Vector nes_gradient(const BatchResult& batch, double sigma, bool antithetic,
                    Execution execution) {
  const double scale = 1.0 / (static_cast<double>(batch.queries()) * sigma);
  return weighted_noise_sum(batch.noise, batch.losses, scale, antithetic, execution);
}

AttackOutcome run_distribution_attack(const AttackObjective& objective,
                                      const AttackConfig& config,
                                      const DistParams& init) {
  config.validate();
  if (init.mu.size() != objective.search_dim()) {
    throw ShapeError("initial mean has " + std::to_string(init.mu.size()) +
                     " entries, search space has " +
                     std::to_string(objective.search_dim()));
  }
  const auto start = std::chrono::steady_clock::now();
  AttackOutcome outcome;
  DistParams params = init;
  params.sigma = config.sigma;
  for (std::size_t t = 0; t < config.max_iterations; ++t) {
    StepResult step = distribution_step(params, objective, config, t);
    outcome.queries += step.batch.queries();
    outcome.iterations = t + 1;
    outcome.loss_trace.push_back(step.batch.mean_loss());
    if (!outcome.success) {
      if (const auto hit = step.batch.first_adversarial()) {
        outcome.success = true;
        outcome.first_success_iter = t;
        outcome.adversarial = step.batch.candidates[*hit];
        outcome.adversarial_query_seed = step.batch.query_seeds[*hit];
        if (config.early_stop) break;
      }
    }
    params = std::move(step.next);
  }
  outcome.final_params = std::move(params);
  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

AttackOutcome run_distribution_attack(const BlackboxModel& model, ConstSpan x,
                                      std::size_t label, const SeedMap& seed_map,
                                      const AttackConfig& config,
                                      const DistParams& init) {
  const ClassifierObjective objective(model, Vector(x.begin(), x.end()), label,
                                      config.budget, seed_map);
  return run_distribution_attack(objective, config, init);
}

}  // namespace distattack
