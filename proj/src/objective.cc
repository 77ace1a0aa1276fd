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

#include "distattack/objective.h"

namespace distattack {

ClassifierObjective::ClassifierObjective(const BlackboxModel& model, Vector x,
                                         std::size_t label,
                                         const NormBudget& budget,
                                         SeedMap seed_map,
                                         ClassifierObjectiveOptions options)
    : model_(model),
      x_(std::move(x)),
      label_(label),
      budget_(budget),
      seed_map_(std::move(seed_map)),
      options_(options) {
  if (x_.size() != model_.input_dim() || seed_map_.input_dim() != x_.size()) {
    throw ShapeError("objective: input, model and seed map dimensions differ");
  }
  if (label_ >= model_.num_classes()) {
    throw std::out_of_range("objective: label out of range");
  }
  if (!(budget_.tau >= 0.0)) throw std::invalid_argument("budget tau must be >= 0");
}

std::size_t ClassifierObjective::search_dim() const {
  return options_.space == SearchSpace::kSeed ? seed_map_.seed_dim() : x_.size();
}

Vector ClassifierObjective::raw_image(ConstSpan point) const {
  return options_.space == SearchSpace::kSeed ? seed_map_.to_input(point)
                                              : clamp_unit(point);
}

Vector ClassifierObjective::candidate(ConstSpan point) const {
  Vector image = raw_image(point);
  if (!options_.project) return image;
  return project_to_ball(x_, image, budget_);
}

Evaluation ClassifierObjective::evaluate(ConstSpan candidate,
                                         std::uint64_t query_seed) const {
  const Vector probs = model_.query(candidate, query_seed);
  return {attack_loss(options_.loss, probs, label_), is_adversarial(probs, label_)};
}

Vector ClassifierObjective::project_point(ConstSpan point) const {
  const Vector projected = project_to_ball(x_, raw_image(point), budget_);
  if (options_.space == SearchSpace::kInput) return projected;
  return seed_map_.to_seed(projected);
}

}  // namespace distattack
