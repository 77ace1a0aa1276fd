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

#ifndef DISTATTACK_OBJECTIVE_H_
#define DISTATTACK_OBJECTIVE_H_

#include <cstddef>
#include <cstdint>

#include "distattack/geometry.h"
#include "distattack/loss.h"
#include "distattack/models.h"
#include "distattack/types.h"

namespace distattack {

struct Evaluation {
  double loss = 0.0;
  bool adversarial = false;
};

// What a search-distribution attack optimizes: a map from the search space to
// the input actually queried, and a (possibly stochastic) loss on that input.
class AttackObjective {
 public:
  virtual ~AttackObjective() = default;
  virtual std::size_t search_dim() const = 0;
  virtual Vector candidate(ConstSpan point) const = 0;
  virtual Evaluation evaluate(ConstSpan candidate, std::uint64_t query_seed) const = 0;
};

enum class SearchSpace {
  kSeed,   // points are seeds z; candidate starts from g(z)
  kInput,  // points live in input space; candidate starts from clamp(z)
};

struct ClassifierObjectiveOptions {
  SearchSpace space = SearchSpace::kSeed;
  bool project = true;  // apply proj_S inside the candidate map
  LossKind loss = LossKind::kCarliniWagner;
};

// Untargeted attack on `model` around the correctly classified input `x`.
// The model is held by reference and must outlive the objective.
class ClassifierObjective final : public AttackObjective {
 public:
  ClassifierObjective(const BlackboxModel& model, Vector x, std::size_t label,
                      const NormBudget& budget, SeedMap seed_map,
                      ClassifierObjectiveOptions options = {});

  std::size_t search_dim() const override;
  Vector candidate(ConstSpan point) const override;
  Evaluation evaluate(ConstSpan candidate, std::uint64_t query_seed) const override;

  // Projects a search point so that its unprojected image lies in S; used by
  // attacks that project after the step instead of inside the objective.
  Vector project_point(ConstSpan point) const;
  // Image of a search point before projection (clamped to the unit box).
  Vector raw_image(ConstSpan point) const;

  const BlackboxModel& model() const { return model_; }
  const Vector& input() const { return x_; }
  std::size_t label() const { return label_; }
  const NormBudget& budget() const { return budget_; }
  const SeedMap& seed_map() const { return seed_map_; }
  const ClassifierObjectiveOptions& options() const { return options_; }

 private:
  const BlackboxModel& model_;
  Vector x_;
  std::size_t label_;
  NormBudget budget_;
  SeedMap seed_map_;
  ClassifierObjectiveOptions options_;
};

}  // namespace distattack

#endif  // DISTATTACK_OBJECTIVE_H_
