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

#include "distattack/baselines.h"

#include <chrono>

namespace distattack {
namespace {

ClassifierObjectiveOptions options_for(const AblationFlags& flags) {
  return {flags.use_transform_g ? SearchSpace::kSeed : SearchSpace::kInput,
          flags.projection_in_objective,
          flags.projection_in_objective ? LossKind::kCarliniWagner
                                        : LossKind::kNegativeProbability};
}

double bandwidth_for(const AblationFlags& flags, const AttackConfig& config) {
  return flags.use_transform_g ? config.sigma : config.input_sigma;
}

bool antithetic_for(const AblationFlags& flags, const AttackConfig& config) {
  return flags.projection_in_objective ? config.antithetic : true;
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Moves `point` by one update and returns the batch it was computed from.
BatchResult update(Vector& point, const ClassifierObjective& objective,
                   const AttackConfig& config, const AblationFlags& flags,
                   std::size_t iteration) {
  const bool antithetic = antithetic_for(flags, config);
  const double sigma = bandwidth_for(flags, config);
  const BatchRequest request{point, sigma, config.batch_size,
                             iteration_seed(config.sample_seed, iteration),
                             antithetic};
  BatchResult batch = evaluate_batch(objective, request, config.execution);
  const double b = static_cast<double>(config.batch_size);
  // -p_y is ascended (pushing the true-class probability down); the margin
  // loss is descended.
  const double direction =
      objective.options().loss == LossKind::kNegativeProbability ? 1.0 : -1.0;
  if (flags.use_zscore) {
    const Vector shaped = zscore(batch.losses);
    const Vector delta =
        weighted_noise_sum(batch.noise, shaped, direction * config.learning_rate / (b * sigma),
                           antithetic, config.execution);
    for (std::size_t j = 0; j < point.size(); ++j) point[j] += delta[j];
  } else {
    const Vector grad = weighted_noise_sum(batch.noise, batch.losses,
                                           1.0 / (b * sigma), antithetic,
                                           config.execution);
    for (std::size_t j = 0; j < point.size(); ++j) {
      point[j] += direction * config.learning_rate * sign(grad[j]);
    }
  }
  return batch;
}

}  // namespace

std::string AblationFlags::name() const {
  if (!projection_in_objective && !use_transform_g && !use_zscore) return "ql";
  std::string out;
  if (projection_in_objective) out += "+proj";
  if (use_transform_g) out += "+g";
  if (use_zscore) out += "+zscore";
  return out;
}

std::vector<AblationFlags> ablation_ladder() {
  return {{false, false, false}, {true, false, false}, {true, true, false},
          {true, true, true}};
}

Vector ql_step(ConstSpan x_t, const BlackboxModel& model, ConstSpan x,
               std::size_t label, const AttackConfig& config,
               std::size_t iteration) {
  const AblationFlags flags = AblationFlags::all_off();
  const ClassifierObjective objective(model, Vector(x.begin(), x.end()), label,
                                      config.budget, SeedMap(x.size()),
                                      options_for(flags));
  Vector point(x_t.begin(), x_t.end());
  update(point, objective, config, flags, iteration);
  return objective.project_point(point);
}

AttackOutcome run_ablation(const BlackboxModel& model, ConstSpan x,
                           std::size_t label, const SeedMap& seed_map,
                           const AttackConfig& config, const AblationFlags& flags) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const ClassifierObjective objective(model, Vector(x.begin(), x.end()), label,
                                      config.budget, seed_map, options_for(flags));
  Vector point = flags.use_transform_g ? seed_map.to_seed(x) : Vector(x.begin(), x.end());

  AttackOutcome outcome;
  for (std::size_t t = 0; t < config.max_iterations; ++t) {
    const Vector before = point;
    BatchResult batch = update(point, objective, config, flags, t);
    outcome.queries += batch.queries();
    outcome.iterations = t + 1;
    outcome.loss_trace.push_back(batch.mean_loss());

    if (flags.projection_in_objective) {
      if (!outcome.success) {
        if (const auto hit = batch.first_adversarial()) {
          outcome.success = true;
          outcome.first_success_iter = t;
          outcome.adversarial = batch.candidates[*hit];
          outcome.adversarial_query_seed = batch.query_seeds[*hit];
          if (config.early_stop) {
            point = before;
            break;
          }
        }
      }
      continue;
    }

    point = objective.project_point(point);
    const Vector probe = project_to_ball(x, objective.raw_image(point), config.budget);
    const std::uint64_t probe_seed =
        query_seed_for(iteration_seed(config.sample_seed, t), config.batch_size);
    const Evaluation e = objective.evaluate(probe, probe_seed);
    ++outcome.queries;
    if (!outcome.success && e.adversarial) {
      outcome.success = true;
      outcome.first_success_iter = t;
      outcome.adversarial = probe;
      outcome.adversarial_query_seed = probe_seed;
      if (config.early_stop) break;
    }
  }
  outcome.final_params = {point, bandwidth_for(flags, config)};
  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

}  // namespace distattack
