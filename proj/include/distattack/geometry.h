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

#ifndef DISTATTACK_GEOMETRY_H_
#define DISTATTACK_GEOMETRY_H_

#include <cstddef>

#include "distattack/types.h"

namespace distattack {

enum class Norm { kL2, kLinf };

// Perturbation budget: the feasible set is the closed p-ball of radius tau.
struct NormBudget {
  Norm norm = Norm::kLinf;
  double tau = 0.0;
};

// Height x width x channels grid, stored row-major with channels innermost.
struct GridShape {
  std::size_t height = 1;
  std::size_t width = 1;
  std::size_t channels = 1;

  std::size_t size() const { return height * width * channels; }
  bool operator==(const GridShape&) const = default;
};

// Per-channel bilinear interpolation from `seed` onto `target` using
// align-corners sampling. Identity when the shapes are equal.
Vector upsample(ConstSpan z, const GridShape& seed, const GridShape& target);

// Least-squares left inverse of upsample: downsample(upsample(z)) == z.
Vector downsample(ConstSpan v, const GridShape& seed, const GridShape& target);

// 0.5 * (tanh(v) + 1), coordinatewise.
Vector squash(ConstSpan v);

inline constexpr double kUnsquashEps = 1e-6;

// artanh(2x - 1) with x clamped to [kUnsquashEps, 1 - kUnsquashEps].
Vector unsquash(ConstSpan x);

Vector clip_l2(ConstSpan delta, double tau);
Vector clip_linf(ConstSpan delta, double tau);

// x + clip_p(candidate - x), clamped into the unit box. The result satisfies
// the budget exactly (no tolerance), and feasible candidates are returned
// bitwise unchanged, so the projection is a fixed point on its own output.
Vector project_to_ball(ConstSpan x, ConstSpan candidate,
                       const NormBudget& budget);

double norm_distance(ConstSpan a, ConstSpan b, Norm norm);

bool within_budget(ConstSpan x, ConstSpan candidate, const NormBudget& budget,
                   double tol = 1e-9);

bool in_unit_box(ConstSpan x);

Vector clamp_unit(ConstSpan x);

// The seed-to-input change of variable g = squash o upsample and its
// pull-back. Shapes are fixed per experiment.
class SeedMap {
 public:
  // Identity upsampling over a flat vector of `dim` entries.
  explicit SeedMap(std::size_t dim);
  SeedMap(const GridShape& seed, const GridShape& input);

  std::size_t seed_dim() const { return seed_.size(); }
  std::size_t input_dim() const { return input_.size(); }
  const GridShape& seed_shape() const { return seed_; }
  const GridShape& input_shape() const { return input_; }
  bool is_identity() const { return seed_ == input_; }

  Vector to_input(ConstSpan z) const;
  Vector to_seed(ConstSpan x) const;

 private:
  GridShape seed_;
  GridShape input_;
};

}  // namespace distattack

#endif  // DISTATTACK_GEOMETRY_H_
