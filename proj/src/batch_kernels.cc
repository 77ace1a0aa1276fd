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

#include "distattack/batch_kernels.h"

#include <exception>
#include <numeric>

#include "distattack/rng.h"

namespace distattack {
namespace {

BatchResult allocate(std::size_t n) {
  BatchResult r;
  r.noise.resize(n);
  r.candidates.resize(n);
  r.losses.assign(n, 0.0);
  r.adversarial.assign(n, 0);
  r.query_seeds.assign(n, 0);
  return r;
}

void evaluate_one(const AttackObjective& objective, const BatchRequest& request,
                  std::size_t i, BatchResult& r) {
  const std::size_t dim = request.center.size();
  Vector eps = draw_noise(request.seed, i, dim, request.antithetic);
  Vector point(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    point[j] = request.center[j] + request.sigma * eps[j];
  }
  r.candidates[i] = objective.candidate(point);
  r.query_seeds[i] = query_seed_for(request.seed, i);
  const Evaluation e = objective.evaluate(r.candidates[i], r.query_seeds[i]);
  r.losses[i] = e.loss;
  r.adversarial[i] = e.adversarial ? 1 : 0;
  r.noise[i] = std::move(eps);
}

void check_request(const AttackObjective& objective, const BatchRequest& request) {
  if (request.center.size() != objective.search_dim()) {
    throw ShapeError("batch center has " + std::to_string(request.center.size()) +
                     " entries, search space has " +
                     std::to_string(objective.search_dim()));
  }
}

}  // namespace

std::optional<std::size_t> BatchResult::first_adversarial() const {
  for (std::size_t i = 0; i < adversarial.size(); ++i) {
    if (adversarial[i]) return i;
  }
  return std::nullopt;
}

double BatchResult::mean_loss() const {
  if (losses.empty()) return 0.0;
  return std::accumulate(losses.begin(), losses.end(), 0.0) /
         static_cast<double>(losses.size());
}

Vector draw_noise(std::uint64_t seed, std::size_t index, std::size_t dim,
                  bool antithetic) {
  const std::size_t stream = antithetic ? index / 2 : index;
  Rng rng(derive_seed(seed, {0x65707331ULL, stream}));
  Vector eps(dim);
  rng.fill_normal(eps);
  if (antithetic && index % 2 == 1) {
    for (double& e : eps) e = -e;
  }
  return eps;
}

std::uint64_t query_seed_for(std::uint64_t seed, std::size_t index) {
  return derive_seed(seed, {0x71756572ULL, index});
}

BatchResult evaluate_batch_serial(const AttackObjective& objective,
                                  const BatchRequest& request) {
  check_request(objective, request);
  BatchResult r = allocate(request.size);
  for (std::size_t i = 0; i < request.size; ++i) evaluate_one(objective, request, i, r);
  return r;
}

BatchResult evaluate_batch_parallel(const AttackObjective& objective,
                                    const BatchRequest& request) {
  check_request(objective, request);
  BatchResult r = allocate(request.size);
  const auto n = static_cast<std::ptrdiff_t>(request.size);
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      evaluate_one(objective, request, static_cast<std::size_t>(i), r);
    } catch (...) {
#pragma omp critical(distattack_batch_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return r;
}

BatchResult evaluate_batch(const AttackObjective& objective,
                           const BatchRequest& request, Execution execution) {
  return execution == Execution::kParallel
             ? evaluate_batch_parallel(objective, request)
             : evaluate_batch_serial(objective, request);
}

namespace {

void check_weights(const std::vector<Vector>& noise, ConstSpan weights) {
  if (noise.size() != weights.size()) {
    throw ShapeError("weighted_noise_sum: noise and weight counts differ");
  }
}

double coordinate_sum(const std::vector<Vector>& noise, ConstSpan weights,
                      std::size_t j, bool antithetic) {
  double acc = 0.0;
  const std::size_t n = noise.size();
  if (antithetic) {
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) acc += (weights[i] - weights[i + 1]) * noise[i][j];
    if (i < n) acc += weights[i] * noise[i][j];
  } else {
    for (std::size_t i = 0; i < n; ++i) acc += weights[i] * noise[i][j];
  }
  return acc;
}

}  // namespace

Vector weighted_noise_sum_serial(const std::vector<Vector>& noise,
                                 ConstSpan weights, double scale,
                                 bool antithetic) {
  check_weights(noise, weights);
  if (noise.empty()) return {};
  const std::size_t dim = noise.front().size();
  Vector out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    out[j] = scale * coordinate_sum(noise, weights, j, antithetic);
  }
  return out;
}

Vector weighted_noise_sum_parallel(const std::vector<Vector>& noise,
                                   ConstSpan weights, double scale,
                                   bool antithetic) {
  check_weights(noise, weights);
  if (noise.empty()) return {};
  const std::size_t dim = noise.front().size();
  Vector out(dim);
  const auto n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    out[jj] = scale * coordinate_sum(noise, weights, jj, antithetic);
  }
  return out;
}

Vector weighted_noise_sum(const std::vector<Vector>& noise, ConstSpan weights,
                          double scale, bool antithetic, Execution execution) {
  return execution == Execution::kParallel
             ? weighted_noise_sum_parallel(noise, weights, scale, antithetic)
             : weighted_noise_sum_serial(noise, weights, scale, antithetic);
}

}  // namespace distattack
