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

#ifndef DISTATTACK_BASELINES_H_
#define DISTATTACK_BASELINES_H_

// Projected-sign NES attack in input space and the ablation ladder that
// turns it, one change at a time, into the search-distribution attack.

#include <cstddef>
#include <string>

#include "distattack/attack.h"

namespace distattack {

struct AblationFlags {
  // Evaluate the loss at projected samples (the smoothed objective with the
  // margin loss) instead of projecting the iterate after a sign step.
  bool projection_in_objective = false;
  // Search over seeds through g instead of directly in input space.
  bool use_transform_g = false;
  // Z-score the losses and take the plain natural-gradient step instead of a
  // sign step.
  bool use_zscore = false;

  static AblationFlags all_off() { return {}; }
  static AblationFlags all_on() { return {true, true, true}; }
  std::string name() const;
};

// The cumulative ladder: all off, +projection, +transform, +z-score.
std::vector<AblationFlags> ablation_ladder();

// One projected-sign step from x_t:
//   x_{t+1} = proj_S(x_t + eta * sign(grad)),
// grad estimated from antithetic samples around x_t for the loss -p_y, which
// the step ascends so that the true-class probability falls.
Vector ql_step(ConstSpan x_t, const BlackboxModel& model, ConstSpan x,
               std::size_t label, const AttackConfig& config,
               std::size_t iteration);

// Runs the variant selected by `flags`. Variants that project after the step
// verify the projected iterate with one extra query per iteration
// (queries = (b + 1) * iterations); the others reuse the batch samples as
// success probes (queries = b * iterations). All flags on reproduces
// run_distribution_attack exactly.
AttackOutcome run_ablation(const BlackboxModel& model, ConstSpan x,
                           std::size_t label, const SeedMap& seed_map,
                           const AttackConfig& config, const AblationFlags& flags);

inline AttackOutcome run_ql(const BlackboxModel& model, ConstSpan x,
                            std::size_t label, const SeedMap& seed_map,
                            const AttackConfig& config) {
  return run_ablation(model, x, label, seed_map, config, AblationFlags::all_off());
}

}  // namespace distattack

#endif  // DISTATTACK_BASELINES_H_
