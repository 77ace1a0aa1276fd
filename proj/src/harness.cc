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

#include "distattack/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>

#include <omp.h>

#include "distattack/loss.h"
#include "distattack/rng.h"

namespace distattack {
namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::map<std::string, std::string> echo(const AttackSelector& selector,
                                        const BenchmarkConfig& config) {
  const AttackConfig& a = config.attack;
  return {
      {"attack", selector.name()},
      {"norm", a.budget.norm == Norm::kL2 ? "l2" : "linf"},
      {"tau", format_double(a.budget.tau)},
      {"max_iterations", std::to_string(a.max_iterations)},
      {"batch_size", std::to_string(a.batch_size)},
      {"learning_rate", format_double(a.learning_rate)},
      {"sigma", format_double(a.sigma)},
      {"input_sigma", format_double(a.input_sigma)},
      {"antithetic", a.antithetic ? "true" : "false"},
      {"early_stop", a.early_stop ? "true" : "false"},
      {"init_jitter", format_double(selector.init_jitter)},
      {"warm_start", selector.initializer ? "true" : "false"},
      {"master_seed", std::to_string(config.master_seed)},
      {"max_inputs", std::to_string(config.max_inputs)},
  };
}

double nearest_rank(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

std::string AttackSelector::name() const {
  if (kind == AttackKind::kAblation) return "ablation:" + flags.name();
  return initializer ? "distribution-warm" : "distribution";
}

bool BenchmarkReport::operator==(const BenchmarkReport& o) const {
  return attack == o.attack && records == o.records &&
         max_iterations == o.max_iterations && success_rate == o.success_rate &&
         success_curve == o.success_curve && total_queries == o.total_queries &&
         mean_queries_per_success == o.mean_queries_per_success &&
         median_queries_per_success == o.median_queries_per_success &&
         p90_queries_per_success == o.p90_queries_per_success &&
         skipped_misclassified == o.skipped_misclassified && config == o.config &&
         warnings == o.warnings;
}

std::uint64_t input_seed(std::uint64_t master_seed, std::size_t input_id) {
  return derive_seed(master_seed, {0x696e707574ULL, input_id});
}

std::uint64_t clean_query_seed(std::uint64_t master_seed, std::size_t input_id) {
  return derive_seed(master_seed, {0x636c65616eULL, input_id});
}

std::vector<std::size_t> select_attackable(const BlackboxModel& model,
                                           const std::vector<LabeledSample>& samples,
                                           std::size_t max_inputs,
                                           std::uint64_t master_seed,
                                           std::size_t* skipped) {
  std::vector<std::size_t> ids;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < samples.size() && ids.size() < max_inputs; ++i) {
    if (predict(model, samples[i].x, clean_query_seed(master_seed, i)) == samples[i].label) {
      ids.push_back(i);
    } else {
      ++wrong;
    }
  }
  if (skipped) *skipped = wrong;
  return ids;
}

AttackOutcome attack_input(const BlackboxModel& model, ConstSpan x,
                           std::size_t label, const SeedMap& seed_map,
                           const AttackSelector& selector, const AttackConfig& config) {
  if (selector.kind == AttackKind::kAblation) {
    return run_ablation(model, x, label, seed_map, config, selector.flags);
  }
  const DistParams init =
      selector.initializer
          ? init_with(*selector.initializer, x, seed_map, config.sigma)
          : init_from_input(x, seed_map, config.sigma, selector.init_jitter,
                            config.sample_seed);
  return run_distribution_attack(model, x, label, seed_map, config, init);
}

BenchmarkReport run_benchmark(const BlackboxModel& model,
                              const std::vector<LabeledSample>& samples,
                              const SeedMap& seed_map, const AttackSelector& selector,
                              const BenchmarkConfig& config) {
  config.attack.validate();
  const auto start = std::chrono::steady_clock::now();
  BenchmarkReport report;
  report.attack = selector.name();
  report.max_iterations = config.attack.max_iterations;
  report.config = echo(selector, config);

  const std::vector<std::size_t> ids = select_attackable(
      model, samples, config.max_inputs, config.master_seed, &report.skipped_misclassified);
  if (ids.empty()) {
    throw ProtocolError("no test input is classified correctly by " + model.describe() +
                        "; nothing to attack");
  }
  // A victim that answers one class everywhere is at chance level: its
  // "correct" inputs are just the members of that class.
  std::set<std::size_t> labels, predicted;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    labels.insert(samples[i].label);
    predicted.insert(predict(model, samples[i].x, clean_query_seed(config.master_seed, i)));
  }
  if (labels.size() > 1 && predicted.size() == 1) {
    throw ProtocolError(model.describe() + " predicts class " +
                        std::to_string(*predicted.begin()) +
                        " for every test input; no attackable protocol");
  }

  report.records.resize(ids.size());
  AttackConfig per_input = config.attack;
  const int workers = std::max(1, config.workers);
  if (workers > 1) per_input.execution = Execution::kSerial;
  const auto n = static_cast<std::ptrdiff_t>(ids.size());
  std::exception_ptr error;

#pragma omp parallel for num_threads(workers) schedule(dynamic) if (workers > 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const std::size_t id = ids[static_cast<std::size_t>(k)];
    const LabeledSample& s = samples[id];
    AttackConfig cfg = per_input;
    cfg.sample_seed = input_seed(config.master_seed, id);
    InputRecord& rec = report.records[static_cast<std::size_t>(k)];
    rec.input_id = id;
    rec.label = s.label;
    rec.input = s.x;
    try {
      rec.outcome = attack_input(model, s.x, s.label, seed_map, selector, cfg);
    } catch (...) {
#pragma omp critical(distattack_benchmark_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  summarize(report);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void summarize(BenchmarkReport& report) {
  const std::size_t n = report.records.size();
  report.total_queries = 0;
  report.success_curve.assign(report.max_iterations, 0.0);
  std::vector<double> success_queries;
  std::size_t successes = 0;
  for (const auto& rec : report.records) {
    report.total_queries += rec.outcome.queries;
    if (!rec.outcome.success) continue;
    ++successes;
    success_queries.push_back(static_cast<double>(rec.outcome.queries));
    if (rec.outcome.first_success_iter &&
        *rec.outcome.first_success_iter < report.max_iterations) {
      report.success_curve[*rec.outcome.first_success_iter] += 1.0;
    }
  }
  double running = 0.0;
  for (double& c : report.success_curve) {
    running += c;
    c = n ? running / static_cast<double>(n) : 0.0;
  }
  report.success_rate = n ? static_cast<double>(successes) / static_cast<double>(n) : 0.0;
  std::sort(success_queries.begin(), success_queries.end());
  double total = 0.0;
  for (double q : success_queries) total += q;
  report.mean_queries_per_success =
      success_queries.empty() ? 0.0 : total / static_cast<double>(success_queries.size());
  report.median_queries_per_success = nearest_rank(success_queries, 0.5);
  report.p90_queries_per_success = nearest_rank(success_queries, 0.9);
}

std::vector<std::pair<double, double>> query_efficiency(const BenchmarkReport& report) {
  std::vector<double> q;
  for (const auto& rec : report.records) {
    if (rec.outcome.success) q.push_back(static_cast<double>(rec.outcome.queries));
  }
  std::sort(q.begin(), q.end());
  std::vector<std::pair<double, double>> out;
  double running = 0.0;
  const double n = static_cast<double>(report.records.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    running += q[k];
    out.emplace_back(static_cast<double>(k + 1) / n, running / static_cast<double>(k + 1));
  }
  return out;
}

SigmaSweep sweep_sigma(const BlackboxModel& model,
                       const std::vector<LabeledSample>& samples,
                       const SeedMap& seed_map, const AttackSelector& selector,
                       const BenchmarkConfig& config, const std::vector<double>& sigmas) {
  if (sigmas.empty()) throw std::invalid_argument("sigma grid is empty");
  SigmaSweep sweep;
  double best_rate = -1.0;
  for (double sigma : sigmas) {
    BenchmarkConfig cfg = config;
    cfg.attack.sigma = sigma;
    const double rate = run_benchmark(model, samples, seed_map, selector, cfg).success_rate;
    sweep.success_by_sigma.emplace_back(sigma, rate);
    if (rate > best_rate || (rate == best_rate && sigma < sweep.best_sigma)) {
      best_rate = rate;
      sweep.best_sigma = sigma;
    }
  }
  return sweep;
}

AdversarialPool build_pool(const std::string& name, const BlackboxModel& model,
                           const std::vector<LabeledSample>& samples,
                           const SeedMap& seed_map, const AttackSelector& selector,
                           const BenchmarkConfig& config, std::size_t count) {
  AdversarialPool pool{name, {}};
  const std::vector<std::size_t> ids =
      select_attackable(model, samples, samples.size(), config.master_seed);
  for (std::size_t start = 0; start < ids.size() && pool.entries.size() < count;
       start += count) {
    const std::size_t stop = std::min(ids.size(), start + count);
    std::vector<AttackOutcome> outcomes(stop - start);
    const int workers = std::max(1, config.workers);
    AttackConfig per_input = config.attack;
    if (workers > 1) per_input.execution = Execution::kSerial;
    const auto n = static_cast<std::ptrdiff_t>(stop - start);
    std::exception_ptr error;
#pragma omp parallel for num_threads(workers) schedule(dynamic) if (workers > 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const std::size_t id = ids[start + static_cast<std::size_t>(k)];
      AttackConfig cfg = per_input;
      cfg.sample_seed = input_seed(config.master_seed, id);
      try {
        outcomes[static_cast<std::size_t>(k)] =
            attack_input(model, samples[id].x, samples[id].label, seed_map, selector, cfg);
      } catch (...) {
#pragma omp critical(distattack_benchmark_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (std::size_t k = 0; k < outcomes.size() && pool.entries.size() < count; ++k) {
      if (!outcomes[k].success) continue;
      const std::size_t id = ids[start + k];
      pool.entries.push_back({id, samples[id].label, samples[id].x,
                              *outcomes[k].adversarial, outcomes[k].adversarial_query_seed});
    }
  }
  return pool;
}

TransferMatrix build_transfer_matrix(const std::vector<NamedModel>& models,
                                     const std::vector<AdversarialPool>& pools,
                                     const NormBudget& budget,
                                     std::size_t requested_count) {
  if (models.size() != pools.size()) {
    throw std::invalid_argument("transfer: one pool per model is required");
  }
  TransferMatrix m;
  const std::size_t k = models.size();
  m.rates.assign(k, std::vector<std::optional<double>>(k));
  m.sample_counts.assign(k, 0);
  for (const auto& nm : models) m.names.push_back(nm.name);

  for (std::size_t i = 0; i < k; ++i) {
    const AdversarialPool& pool = pools[i];
    std::vector<const PoolEntry*> usable;
    for (const auto& e : pool.entries) {
      if (within_budget(e.input, e.adversarial, budget) && in_unit_box(e.adversarial)) {
        usable.push_back(&e);
      } else {
        m.warnings.push_back(models[i].name + ": input " + std::to_string(e.input_id) +
                             " lies outside the budget and was dropped");
      }
    }
    if (usable.size() < requested_count) {
      m.warnings.push_back(models[i].name + ": pool holds " + std::to_string(usable.size()) +
                           " adversarial examples, " + std::to_string(requested_count) +
                           " requested");
    }
    m.sample_counts[i] = usable.size();
    if (usable.empty()) continue;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t fooled = 0;
      for (const PoolEntry* e : usable) {
        const Vector probs = models[j].model->query(e->adversarial, e->query_seed);
        if (is_adversarial(probs, e->label)) ++fooled;
      }
      m.rates[i][j] = static_cast<double>(fooled) / static_cast<double>(usable.size());
    }
  }
  return m;
}

}  // namespace distattack
