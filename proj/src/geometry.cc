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

#include "distattack/geometry.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace distattack {
namespace {

void check_grids(std::size_t n, const GridShape& seed, const GridShape& target) {
  if (n != seed.size()) {
    throw ShapeError("seed vector has " + std::to_string(n) +
                     " entries, grid expects " + std::to_string(seed.size()));
  }
  if (seed.channels != target.channels || seed.height > target.height ||
      seed.width > target.width || seed.size() == 0) {
    throw ShapeError("seed grid " + std::to_string(seed.height) + "x" +
                     std::to_string(seed.width) + "x" +
                     std::to_string(seed.channels) +
                     " cannot be interpolated onto " +
                     std::to_string(target.height) + "x" +
                     std::to_string(target.width) + "x" +
                     std::to_string(target.channels));
  }
}

// Align-corners linear interpolation weights, out x in.
Eigen::MatrixXd axis_matrix(std::size_t in, std::size_t out) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(out, in);
  for (std::size_t i = 0; i < out; ++i) {
    if (in == 1 || out == 1) {
      m(i, 0) = 1.0;
      continue;
    }
    const double src = static_cast<double>(i) * static_cast<double>(in - 1) /
                       static_cast<double>(out - 1);
    const auto lo = std::min(static_cast<std::size_t>(std::floor(src)), in - 1);
    const double frac = src - static_cast<double>(lo);
    m(i, lo) += 1.0 - frac;
    if (frac > 0.0) m(i, lo + 1) += frac;
  }
  return m;
}

// Applies rows_op along the height axis and cols_op along the width axis.
Vector separable_apply(ConstSpan v, const GridShape& from, const GridShape& to,
                       const Eigen::MatrixXd& rows_op,
                       const Eigen::MatrixXd& cols_op) {
  const std::size_t c = from.channels;
  // Height pass: from.h x from.w -> to.h x from.w.
  Vector mid(to.height * from.width * c, 0.0);
  for (std::size_t i = 0; i < to.height; ++i) {
    for (std::size_t k = 0; k < from.height; ++k) {
      const double w = rows_op(i, k);
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < from.width; ++j) {
        for (std::size_t ch = 0; ch < c; ++ch) {
          mid[(i * from.width + j) * c + ch] += w * v[(k * from.width + j) * c + ch];
        }
      }
    }
  }
  Vector out(to.height * to.width * c, 0.0);
  for (std::size_t i = 0; i < to.height; ++i) {
    for (std::size_t j = 0; j < to.width; ++j) {
      for (std::size_t k = 0; k < from.width; ++k) {
        const double w = cols_op(j, k);
        if (w == 0.0) continue;
        for (std::size_t ch = 0; ch < c; ++ch) {
          out[(i * to.width + j) * c + ch] += w * mid[(i * from.width + k) * c + ch];
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXd left_inverse(const Eigen::MatrixXd& u) {
  return (u.transpose() * u).ldlt().solve(u.transpose());
}

}  // namespace

Vector upsample(ConstSpan z, const GridShape& seed, const GridShape& target) {
  check_grids(z.size(), seed, target);
  if (seed == target) return Vector(z.begin(), z.end());
  return separable_apply(z, seed, target, axis_matrix(seed.height, target.height),
                         axis_matrix(seed.width, target.width));
}

Vector downsample(ConstSpan v, const GridShape& seed, const GridShape& target) {
  check_grids(seed.size(), seed, target);
  if (v.size() != target.size()) {
    throw ShapeError("input vector has " + std::to_string(v.size()) +
                     " entries, grid expects " + std::to_string(target.size()));
  }
  if (seed == target) return Vector(v.begin(), v.end());
  return separable_apply(v, target, seed,
                         left_inverse(axis_matrix(seed.height, target.height)),
                         left_inverse(axis_matrix(seed.width, target.width)));
}

Vector squash(ConstSpan v) {
  Vector out(v.size());
  std::transform(v.begin(), v.end(), out.begin(),
                 [](double a) { return 0.5 * (std::tanh(a) + 1.0); });
  return out;
}

Vector unsquash(ConstSpan x) {
  Vector out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](double a) {
    const double c = std::clamp(a, kUnsquashEps, 1.0 - kUnsquashEps);
    return std::atanh(2.0 * c - 1.0);
  });
  return out;
}

namespace {

// Upper bound on ulp-sized corrections after rounding.
constexpr int kMaxNudges = 64;

void check_radius(double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("clip radius must be >= 0");
}

}  // namespace

Vector clip_l2(ConstSpan delta, double tau) {
  check_radius(tau);
  double sq = 0.0;
  for (double d : delta) sq += d * d;
  const double norm = std::sqrt(sq);
  Vector out(delta.begin(), delta.end());
  if (norm <= tau) return out;
  // Rounding can leave tau / norm a few ulps too large; shrink the scale until
  // the clipped norm is within tau, so clipping again is a no-op.
  double scale = tau / norm;
  for (int attempt = 0; attempt < kMaxNudges; ++attempt) {
    double s = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = delta[i] * scale;
      s += out[i] * out[i];
    }
    if (std::sqrt(s) <= tau) return out;
    scale = std::nextafter(scale, 0.0);
  }
  std::fill(out.begin(), out.end(), 0.0);
  return out;
}

Vector clip_linf(ConstSpan delta, double tau) {
  check_radius(tau);
  Vector out(delta.size());
  std::transform(delta.begin(), delta.end(), out.begin(),
                 [tau](double d) { return std::clamp(d, -tau, tau); });
  return out;
}

Vector project_to_ball(ConstSpan x, ConstSpan candidate,
                       const NormBudget& budget) {
  if (x.size() != candidate.size()) {
    throw ShapeError("projection: input has " + std::to_string(x.size()) +
                     " entries, candidate has " +
                     std::to_string(candidate.size()));
  }
  // A feasible candidate is kept bitwise, which makes the projection a fixed
  // point on its own output.
  if (in_unit_box(candidate) && within_budget(x, candidate, budget, 0.0)) {
    return Vector(candidate.begin(), candidate.end());
  }
  Vector delta(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) delta[i] = candidate[i] - x[i];
  delta = budget.norm == Norm::kL2 ? clip_l2(delta, budget.tau)
                                   : clip_linf(delta, budget.tau);
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::clamp(x[i] + delta[i], 0.0, 1.0);
  }
  // Rounding x + delta can overshoot the radius by an ulp; pull back until
  // the budget holds exactly.
  // Inputs outside the unit box can make this impossible; fall back to x.
  if (budget.norm == Norm::kLinf) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (int k = 0; std::abs(out[i] - x[i]) > budget.tau; ++k) {
        out[i] = k < kMaxNudges ? std::nextafter(out[i], x[i]) : x[i];
      }
    }
  } else {
    for (int k = 0; norm_distance(x, out, Norm::kL2) > budget.tau; ++k) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = k < kMaxNudges ? x[i] + (out[i] - x[i]) * (1.0 - 1e-15) : x[i];
      }
    }
  }
  return out;
}

double norm_distance(ConstSpan a, ConstSpan b, Norm norm) {
  if (a.size() != b.size()) throw ShapeError("norm_distance: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (norm == Norm::kL2) {
      acc += d * d;
    } else {
      acc = std::max(acc, d);
    }
  }
  return norm == Norm::kL2 ? std::sqrt(acc) : acc;
}

bool within_budget(ConstSpan x, ConstSpan candidate, const NormBudget& budget,
                   double tol) {
  return norm_distance(x, candidate, budget.norm) <= budget.tau + tol;
}

bool in_unit_box(ConstSpan x) {
  return std::all_of(x.begin(), x.end(),
                     [](double v) { return v >= 0.0 && v <= 1.0; });
}

Vector clamp_unit(ConstSpan x) {
  Vector out(x.size());
  std::transform(x.begin(), x.end(), out.begin(),
                 [](double v) { return std::clamp(v, 0.0, 1.0); });
  return out;
}

SeedMap::SeedMap(std::size_t dim) : seed_{1, dim, 1}, input_{1, dim, 1} {}

SeedMap::SeedMap(const GridShape& seed, const GridShape& input)
    : seed_(seed), input_(input) {
  check_grids(seed.size(), seed, input);
}

Vector SeedMap::to_input(ConstSpan z) const {
  if (is_identity()) {
    if (z.size() != seed_.size()) throw ShapeError("seed size mismatch");
    return squash(z);
  }
  return squash(upsample(z, seed_, input_));
}

Vector SeedMap::to_seed(ConstSpan x) const {
  if (is_identity()) {
    if (x.size() != input_.size()) throw ShapeError("input size mismatch");
    return unsquash(x);
  }
  return downsample(unsquash(x), seed_, input_);
}

}  // namespace distattack
