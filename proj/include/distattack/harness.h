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

#ifndef DISTATTACK_HARNESS_H_
#define DISTATTACK_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distattack/attack.h"
#include "distattack/baselines.h"
#include "distattack/dataset.h"
#include "distattack/init.h"

namespace distattack {

enum class AttackKind { kDistribution, kAblation };

struct AttackSelector {
  AttackKind kind = AttackKind::kDistribution;
  AblationFlags flags;                              // kAblation only
  std::shared_ptr<const Initializer> initializer;   // warm start, kDistribution only
  double init_jitter = 0.0;

  static AttackSelector distribution() { return {}; }
  static AttackSelector ablation(const AblationFlags& flags) {
    return {AttackKind::kAblation, flags, nullptr, 0.0};
  }
  std::string name() const;
};

struct BenchmarkConfig {
  AttackConfig attack;
  std::size_t max_inputs = 200;
  std::uint64_t master_seed = 0;
  int workers = 1;  // > 1 attacks inputs concurrently (batches then run serially)
};

struct InputRecord {
  std::size_t input_id = 0;  // index into the test split
  std::size_t label = 0;
  Vector input;
  AttackOutcome outcome;

  bool operator==(const InputRecord&) const = default;
};

struct BenchmarkReport {
  std::string attack;
  std::vector<InputRecord> records;
  std::size_t max_iterations = 0;
  double success_rate = 0.0;
  // curve[t] = fraction of inputs whose first success came at iteration <= t.
  Vector success_curve;
  std::size_t total_queries = 0;
  double mean_queries_per_success = 0.0;
  double median_queries_per_success = 0.0;
  double p90_queries_per_success = 0.0;
  double wall_seconds = 0.0;
  std::size_t skipped_misclassified = 0;
  std::map<std::string, std::string> config;
  std::vector<std::string> warnings;

  // Compares everything except wall-clock fields.
  bool operator==(const BenchmarkReport& other) const;
};

// Derived per-input seeds. Results never depend on worker scheduling.
std::uint64_t input_seed(std::uint64_t master_seed, std::size_t input_id);
std::uint64_t clean_query_seed(std::uint64_t master_seed, std::size_t input_id);

// Test inputs (in split order) that `model` classifies correctly, at most
// max_inputs of them.
std::vector<std::size_t> select_attackable(const BlackboxModel& model,
                                           const std::vector<LabeledSample>& samples,
                                           std::size_t max_inputs,
                                           std::uint64_t master_seed,
                                           std::size_t* skipped = nullptr);

AttackOutcome attack_input(const BlackboxModel& model, ConstSpan x,
                           std::size_t label, const SeedMap& seed_map,
                           const AttackSelector& selector, const AttackConfig& config);

// Attacks every correctly classified test input (up to max_inputs). Throws
// ProtocolError when no input is correctly classified or when the model
// predicts a single class across a multi-class split.
BenchmarkReport run_benchmark(const BlackboxModel& model,
                              const std::vector<LabeledSample>& samples,
                              const SeedMap& seed_map, const AttackSelector& selector,
                              const BenchmarkConfig& config);

// Recomputes the aggregate fields of `report` from its records.
void summarize(BenchmarkReport& report);

// (success level, mean queries over the successful inputs needed to reach
// it): the k-th point uses the k cheapest successes, level k / n_inputs.
std::vector<std::pair<double, double>> query_efficiency(const BenchmarkReport& report);

struct SigmaSweep {
  std::vector<std::pair<double, double>> success_by_sigma;
  double best_sigma = 0.0;
};

// Runs the benchmark once per sigma under the same query budget and picks the
// sigma with the highest success rate (the smallest on ties).
SigmaSweep sweep_sigma(const BlackboxModel& model,
                       const std::vector<LabeledSample>& samples,
                       const SeedMap& seed_map, const AttackSelector& selector,
                       const BenchmarkConfig& config, const std::vector<double>& sigmas);

struct PoolEntry {
  std::size_t input_id = 0;
  std::size_t label = 0;
  Vector input;
  Vector adversarial;
  std::uint64_t query_seed = 0;
};

struct AdversarialPool {
  std::string source;
  std::vector<PoolEntry> entries;
};

// Attacks correctly classified test inputs of `model` in order until `count`
// adversarial examples are found or the split is exhausted.
AdversarialPool build_pool(const std::string& name, const BlackboxModel& model,
                           const std::vector<LabeledSample>& samples,
                           const SeedMap& seed_map, const AttackSelector& selector,
                           const BenchmarkConfig& config, std::size_t count);

struct NamedModel {
  std::string name;
  ModelPtr model;
};

struct TransferMatrix {
  std::vector<std::string> names;
  // rates[i][j]: fraction of source-i adversarial examples misclassified by
  // target j, evaluated under the query seed that verified them on the
  // source. Absent when the pool is empty.
  std::vector<std::vector<std::optional<double>>> rates;
  std::vector<std::size_t> sample_counts;
  std::vector<std::string> warnings;
};

TransferMatrix build_transfer_matrix(const std::vector<NamedModel>& models,
                                     const std::vector<AdversarialPool>& pools,
                                     const NormBudget& budget,
                                     std::size_t requested_count);

}  // namespace distattack

#endif  // DISTATTACK_HARNESS_H_
