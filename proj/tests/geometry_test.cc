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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace distattack {
namespace {

// Independent bilinear oracle: evaluates the align-corners interpolant at a
// single output pixel from the four surrounding seed pixels.
double bilinear_at(const Vector& z, const GridShape& s, const GridShape& t,
                   std::size_t r, std::size_t c, std::size_t ch) {
  auto coord = [](std::size_t i, std::size_t n_in, std::size_t n_out) {
    return n_out == 1 ? 0.0
                      : static_cast<double>(i) * static_cast<double>(n_in - 1) /
                            static_cast<double>(n_out - 1);
  };
  const double y = coord(r, s.height, t.height);
  const double x = coord(c, s.width, t.width);
  const auto y0 = static_cast<std::size_t>(std::floor(y));
  const auto x0 = static_cast<std::size_t>(std::floor(x));
  const std::size_t y1 = std::min(y0 + 1, s.height - 1);
  const std::size_t x1 = std::min(x0 + 1, s.width - 1);
  const double fy = y - static_cast<double>(y0);
  const double fx = x - static_cast<double>(x0);
  auto at = [&](std::size_t i, std::size_t j) {
    return z[(i * s.width + j) * s.channels + ch];
  };
  return (1 - fy) * ((1 - fx) * at(y0, x0) + fx * at(y0, x1)) +
         fy * ((1 - fx) * at(y1, x0) + fx * at(y1, x1));
}

TEST(Upsample, IdentityWhenShapesMatch) {
  const Vector z{0.1, -2.0, 3.5, 0.0};
  const GridShape s{2, 2, 1};
  EXPECT_EQ(upsample(z, s, s), z);
}

TEST(Upsample, ConstantField) {
  EXPECT_EQ(upsample(Vector{0.3}, {1, 1, 1}, {2, 2, 1}), (Vector{0.3, 0.3, 0.3, 0.3}));
}

TEST(Upsample, MidpointOfTwoPixels) {
  const Vector out = upsample(Vector{0.0, 1.0}, {2, 1, 1}, {3, 1, 1});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_DOUBLE_EQ(out[0], 0.0);
  EXPECT_DOUBLE_EQ(out[1], 0.5);
  EXPECT_DOUBLE_EQ(out[2], 1.0);
}

TEST(Upsample, MatchesPointwiseOracle) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> normal;
  const GridShape seed{3, 4, 2};
  const GridShape target{7, 9, 2};
  for (int trial = 0; trial < 20; ++trial) {
    Vector z(seed.size());
    for (double& v : z) v = normal(gen);
    const Vector out = upsample(z, seed, target);
    for (std::size_t r = 0; r < target.height; ++r) {
      for (std::size_t c = 0; c < target.width; ++c) {
        for (std::size_t ch = 0; ch < target.channels; ++ch) {
          EXPECT_NEAR(out[(r * target.width + c) * target.channels + ch],
                      bilinear_at(z, seed, target, r, c, ch), 1e-12);
        }
      }
    }
  }
}

TEST(Upsample, IsLinear) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal;
  const GridShape seed{2, 3, 1};
  const GridShape target{5, 8, 1};
  Vector a(seed.size()), b(seed.size()), mix(seed.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = normal(gen);
    b[i] = normal(gen);
    mix[i] = 2.0 * a[i] - 0.5 * b[i];
  }
  const Vector ua = upsample(a, seed, target);
  const Vector ub = upsample(b, seed, target);
  const Vector um = upsample(mix, seed, target);
  for (std::size_t i = 0; i < um.size(); ++i) {
    EXPECT_NEAR(um[i], 2.0 * ua[i] - 0.5 * ub[i], 1e-12);
  }
}

TEST(Upsample, RejectsWrongLength) {
  EXPECT_THROW(upsample(Vector{1.0, 2.0}, {1, 1, 1}, {2, 2, 1}), ShapeError);
  EXPECT_THROW(upsample(Vector{1.0}, {1, 1, 1}, {2, 2, 3}), ShapeError);
}

TEST(Downsample, LeftInverseOfUpsample) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> normal;
  const GridShape seed{3, 3, 3};
  const GridShape target{8, 8, 3};
  Vector z(seed.size());
  for (double& v : z) v = normal(gen);
  const Vector back = downsample(upsample(z, seed, target), seed, target);
  ASSERT_EQ(back.size(), z.size());
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_NEAR(back[i], z[i], 1e-10);
}

TEST(Squash, Examples) {
  for (double v : squash(Vector(5, 0.0))) EXPECT_EQ(v, 0.5);
  EXPECT_NEAR(squash(Vector{20.0})[0], 1.0, 1e-9);
  EXPECT_NEAR(squash(Vector{1.0})[0], 0.8807970779778823, 1e-15);
}

TEST(Unsquash, Examples) {
  for (double v : unsquash(Vector(4, 0.5))) EXPECT_EQ(v, 0.0);
  EXPECT_NEAR(unsquash(Vector{0.880797})[0], 1.0, 1e-5);
  const double top = unsquash(Vector{1.0})[0];
  const double bottom = unsquash(Vector{0.0})[0];
  EXPECT_TRUE(std::isfinite(top));
  EXPECT_TRUE(std::isfinite(bottom));
  EXPECT_NEAR(top, std::atanh(1.0 - 2.0 * kUnsquashEps), 1e-9);
  EXPECT_NEAR(bottom, -top, 1e-9);
}

TEST(Unsquash, RoundTripsInterior) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unit(0.001, 0.999);
  Vector x(200);
  for (double& v : x) v = unit(gen);
  const Vector back = squash(unsquash(x));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(back[i], x[i], 1e-12);
}

TEST(ClipL2, Examples) {
  const Vector a = clip_l2(Vector{3.0, 4.0}, 1.0);
  EXPECT_NEAR(a[0], 0.6, 1e-15);
  EXPECT_NEAR(a[1], 0.8, 1e-15);
  EXPECT_EQ(clip_l2(Vector{0.1, 0.0}, 1.0), (Vector{0.1, 0.0}));
  EXPECT_EQ(clip_l2(Vector{0.0, 0.0, 0.0}, 0.5), (Vector{0.0, 0.0, 0.0}));
  EXPECT_EQ(clip_l2(Vector{0.0, 0.0}, 0.0), (Vector{0.0, 0.0}));
}

TEST(ClipLinf, Examples) {
  EXPECT_EQ(clip_linf(Vector{0.05, -0.02}, 0.031), (Vector{0.031, -0.02}));
  EXPECT_EQ(clip_linf(Vector{-0.05}, 0.031), (Vector{-0.031}));
  EXPECT_EQ(clip_linf(Vector{0.01, -0.01, 0.0}, 0.031), (Vector{0.01, -0.01, 0.0}));
}

TEST(Clip, RejectsNegativeRadius) {
  EXPECT_THROW(clip_l2(Vector{1.0}, -1.0), std::invalid_argument);
  EXPECT_THROW(clip_linf(Vector{1.0}, -1.0), std::invalid_argument);
}

TEST(Clip, BoundedAndIdempotent) {
  std::mt19937_64 gen(2026);
  std::normal_distribution<double> normal;
  std::exponential_distribution<double> radius(4.0);
  for (int trial = 0; trial < 20000; ++trial) {
    Vector d(1 + trial % 17);
    const double scale = std::exp(normal(gen));
    for (double& v : d) v = scale * normal(gen);
    const double tau = radius(gen);

    const Vector l2 = clip_l2(d, tau);
    EXPECT_LE(norm_distance(l2, Vector(d.size(), 0.0), Norm::kL2), tau);
    EXPECT_EQ(clip_l2(l2, tau), l2);

    const Vector li = clip_linf(d, tau);
    EXPECT_LE(norm_distance(li, Vector(d.size(), 0.0), Norm::kLinf), tau);
    EXPECT_EQ(clip_linf(li, tau), li);
  }
}

TEST(ProjectToBall, Examples) {
  const NormBudget linf{Norm::kLinf, 0.1};
  const Vector x{0.2, 0.7};
  EXPECT_EQ(project_to_ball(x, x, linf), x);
  EXPECT_NEAR(project_to_ball(Vector{0.5}, Vector{0.9}, linf)[0], 0.6, 1e-15);
  EXPECT_EQ(project_to_ball(Vector{0.99}, Vector{1.5}, linf)[0], 1.0);
  EXPECT_EQ(project_to_ball(Vector{0.01}, Vector{-0.5}, linf)[0], 0.0);
}

TEST(ProjectToBall, FixedPointAndFeasible) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  for (Norm norm : {Norm::kL2, Norm::kLinf}) {
    for (int trial = 0; trial < 500; ++trial) {
      Vector x(8), c(8);
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = unit(gen);
        c[i] = x[i] + 0.5 * normal(gen);
      }
      const NormBudget budget{norm, 0.3 * unit(gen)};
      const Vector p = project_to_ball(x, c, budget);
      EXPECT_TRUE(within_budget(x, p, budget, 0.0));
      EXPECT_TRUE(in_unit_box(p));
      EXPECT_EQ(project_to_ball(x, p, budget), p);
    }
  }
}

TEST(ProjectToBall, RejectsMismatchedLengths) {
  EXPECT_THROW(project_to_ball(Vector{0.1, 0.2}, Vector{0.1}, {Norm::kL2, 1.0}), ShapeError);
}

TEST(SeedMap, IdentityRoundTrip) {
  const SeedMap map(3);
  EXPECT_TRUE(map.is_identity());
  const Vector x{0.25, 0.5, 0.75};
  const Vector back = map.to_input(map.to_seed(x));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(back[i], x[i], 1e-12);
}

TEST(SeedMap, LowerDimensionalSeed) {
  const SeedMap map({2, 2, 1}, {4, 4, 1});
  EXPECT_EQ(map.seed_dim(), 4u);
  EXPECT_EQ(map.input_dim(), 16u);
  const Vector z{0.3, -0.2, 1.0, 0.0};
  const Vector x = map.to_input(z);
  ASSERT_EQ(x.size(), 16u);
  EXPECT_TRUE(in_unit_box(x));
  const Vector back = map.to_seed(x);
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_NEAR(back[i], z[i], 1e-10);
}

}  // namespace
}  // namespace distattack
