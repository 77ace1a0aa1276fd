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

// Serial reference vs OpenMP batch kernels on a desk-scale victim.

#include <benchmark/benchmark.h>

#include "distattack/attack.h"
#include "distattack/batch_kernels.h"
#include "distattack/dataset.h"
#include "distattack/training.h"

namespace {

using namespace distattack;

struct Fixture {
  Fixture() : data(make_blobs({})), model([&] {
    TrainConfig tc;
    tc.epochs = 5;
    return train_mlp(data, tc).spec;
  }()) {}

  LabeledDataset data;
  MlpModel model;
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_EvaluateBatch(benchmark::State& state, Execution execution) {
  const Fixture& f = fixture();
  const auto& s = f.data.test.front();
  const SeedMap map(s.x.size());
  const ClassifierObjective objective(f.model, s.x, s.label, {Norm::kLinf, 0.1}, map);
  const Vector mu = map.to_seed(s.x);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const BatchRequest request{mu, 0.1, static_cast<std::size_t>(state.range(0)), ++seed,
                               false};
    benchmark::DoNotOptimize(evaluate_batch(objective, request, execution));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WeightedNoiseSum(benchmark::State& state, Execution execution) {
  const std::size_t b = static_cast<std::size_t>(state.range(0));
  std::vector<Vector> noise;
  for (std::size_t i = 0; i < b; ++i) noise.push_back(draw_noise(7, i, 3072, false));
  Vector weights(b, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weighted_noise_sum(noise, weights, 0.1, false, execution));
  }
}

BENCHMARK_CAPTURE(BM_EvaluateBatch, serial, Execution::kSerial)->Arg(100)->Arg(300);
BENCHMARK_CAPTURE(BM_EvaluateBatch, openmp, Execution::kParallel)->Arg(100)->Arg(300);
BENCHMARK_CAPTURE(BM_WeightedNoiseSum, serial, Execution::kSerial)->Arg(300);
BENCHMARK_CAPTURE(BM_WeightedNoiseSum, openmp, Execution::kParallel)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
