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

#include <gtest/gtest.h>

#include "distattack/desk.h"
#include "distattack/report.h"

namespace distattack {
namespace {

class HarnessTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { setup_ = new desk::Setup(desk::make_setup(1)); }
  static void TearDownTestSuite() {
    delete setup_;
    setup_ = nullptr;
  }

  static BenchmarkConfig small_config() {
    BenchmarkConfig config;
    config.attack = desk::attack_config();
    config.attack.max_iterations = 30;
    config.attack.batch_size = 20;
    config.max_inputs = 24;
    config.master_seed = 5;
    return config;
  }

  const SeedMap map_{64};
  static desk::Setup* setup_;
};

desk::Setup* HarnessTest::setup_ = nullptr;

TEST_F(HarnessTest, ConstantClassifierIsRejected) {
  const ConstantModel constant(64, {0.7, 0.1, 0.1, 0.1});
  EXPECT_THROW(run_benchmark(constant, setup_->data.test, map_,
                             AttackSelector::distribution(), small_config()),
               ProtocolError);
}

TEST_F(HarnessTest, NothingCorrectIsRejected) {
  std::vector<LabeledSample> wrong;
  for (std::size_t k = 0; k < 10; ++k) {
    LabeledSample s = setup_->data.test[k];
    s.label = (predict(*setup_->model, s.x, 0) + 1) % 4;
    wrong.push_back(s);
  }
  BenchmarkConfig config = small_config();
  config.master_seed = 0;
  EXPECT_THROW(run_benchmark(*setup_->model, wrong, map_, AttackSelector::distribution(),
                             config),
               ProtocolError);
}

TEST_F(HarnessTest, SkipsMisclassifiedInputs) {
  std::vector<LabeledSample> samples(setup_->data.test.begin(),
                                     setup_->data.test.begin() + 12);
  samples[3].label = (samples[3].label + 1) % 4;
  samples[7].label = (samples[7].label + 2) % 4;
  const BenchmarkReport r = run_benchmark(*setup_->model, samples, map_,
                                          AttackSelector::distribution(), small_config());
  EXPECT_EQ(r.records.size(), 10u);
  EXPECT_EQ(r.skipped_misclassified, 2u);
  for (const auto& rec : r.records) {
    EXPECT_NE(rec.input_id, 3u);
    EXPECT_NE(rec.input_id, 7u);
  }
}

TEST_F(HarnessTest, ReportInvariants) {
  const BenchmarkReport r = run_benchmark(*setup_->model, setup_->data.test, map_,
                                          AttackSelector::distribution(), small_config());
  ASSERT_EQ(r.records.size(), 24u);
  std::size_t successes = 0, queries = 0;
  for (const auto& rec : r.records) {
    successes += rec.outcome.success ? 1 : 0;
    queries += rec.outcome.queries;
    if (rec.outcome.success) {
      EXPECT_TRUE(within_budget(rec.input, *rec.outcome.adversarial,
                                small_config().attack.budget, 0.0));
    }
  }
  EXPECT_DOUBLE_EQ(r.success_rate, static_cast<double>(successes) / 24.0);
  EXPECT_EQ(r.total_queries, queries);
  ASSERT_EQ(r.success_curve.size(), 30u);
  EXPECT_TRUE(std::is_sorted(r.success_curve.begin(), r.success_curve.end()));
  EXPECT_DOUBLE_EQ(r.success_curve.back(), r.success_rate);
  EXPECT_EQ(r.config.at("tau"), "0.20000000000000001");
  EXPECT_EQ(r.attack, "distribution");
}

TEST_F(HarnessTest, WorkersDoNotChangeResults) {
  BenchmarkConfig config = small_config();
  const BenchmarkReport one = run_benchmark(*setup_->model, setup_->data.test, map_,
                                            AttackSelector::distribution(), config);
  config.workers = 4;
  const BenchmarkReport four = run_benchmark(*setup_->model, setup_->data.test, map_,
                                             AttackSelector::distribution(), config);
  EXPECT_TRUE(one == four);
  EXPECT_EQ(report_csv(one), report_csv(four));
  EXPECT_EQ(report_json(one), report_json(four));
}

TEST_F(HarnessTest, MasterSeedChangesResults) {
  BenchmarkConfig config = small_config();
  config.attack.max_iterations = 3;
  const BenchmarkReport a = run_benchmark(*setup_->model, setup_->data.test, map_,
                                          AttackSelector::distribution(), config);
  config.master_seed = 6;
  const BenchmarkReport b = run_benchmark(*setup_->model, setup_->data.test, map_,
                                          AttackSelector::distribution(), config);
  EXPECT_NE(report_csv(a), report_csv(b));
}

TEST_F(HarnessTest, QueryEfficiencyUsesSuccessesOnly) {
  BenchmarkReport r;
  r.max_iterations = 5;
  auto add = [&](bool success, std::size_t queries) {
    InputRecord rec;
    rec.outcome.success = success;
    rec.outcome.queries = queries;
    if (success) rec.outcome.first_success_iter = 0;
    r.records.push_back(rec);
  };
  add(true, 300);
  add(false, 1000);
  add(true, 100);
  add(true, 200);
  summarize(r);
  const auto eff = query_efficiency(r);
  ASSERT_EQ(eff.size(), 3u);
  EXPECT_DOUBLE_EQ(eff[0].first, 0.25);
  EXPECT_DOUBLE_EQ(eff[0].second, 100.0);
  EXPECT_DOUBLE_EQ(eff[1].second, 150.0);
  EXPECT_DOUBLE_EQ(eff[2].first, 0.75);
  EXPECT_DOUBLE_EQ(eff[2].second, 200.0);
  EXPECT_DOUBLE_EQ(r.mean_queries_per_success, 200.0);
  EXPECT_DOUBLE_EQ(r.median_queries_per_success, 200.0);
  EXPECT_EQ(r.total_queries, 1600u);
  EXPECT_DOUBLE_EQ(r.success_rate, 0.75);
}

TEST_F(HarnessTest, SigmaSweepPicksBest) {
  BenchmarkConfig config = small_config();
  config.max_inputs = 8;
  const SigmaSweep sweep = sweep_sigma(*setup_->model, setup_->data.test, map_,
                                       AttackSelector::distribution(), config,
                                       {0.01, 0.1, 0.5});
  ASSERT_EQ(sweep.success_by_sigma.size(), 3u);
  double best = 0.0;
  for (const auto& [sigma, rate] : sweep.success_by_sigma) best = std::max(best, rate);
  for (const auto& [sigma, rate] : sweep.success_by_sigma) {
    if (sigma == sweep.best_sigma) {
      EXPECT_EQ(rate, best);
    }
  }
  EXPECT_THROW(sweep_sigma(*setup_->model, setup_->data.test, map_,
                           AttackSelector::distribution(), config, {}),
               std::invalid_argument);
}

TEST_F(HarnessTest, TransferDiagonalAndIndependentCopies) {
  auto tc = desk::training(2);
  const auto other = std::make_shared<MlpModel>(train_mlp(setup_->data, tc).spec);
  const std::vector<NamedModel> zoo = {
      {"a", setup_->model}, {"b", other}, {"sap", wrap_defense(setup_->model, Defense::sap())}};
  BenchmarkConfig config;
  config.attack = desk::attack_config();
  config.master_seed = 1;
  std::vector<AdversarialPool> pools;
  for (const auto& m : zoo) {
    pools.push_back(build_pool(m.name, *m.model, setup_->data.test, map_,
                               AttackSelector::distribution(), config, 200));
  }
  const TransferMatrix tm = build_transfer_matrix(zoo, pools, config.attack.budget, 200);
  for (std::size_t i = 0; i < zoo.size(); ++i) {
    ASSERT_TRUE(tm.rates[i][i].has_value());
    EXPECT_EQ(*tm.rates[i][i], 1.0);
    EXPECT_EQ(tm.sample_counts[i], 200u);
  }
  EXPECT_GT(*tm.rates[0][1], 0.0);
  EXPECT_LT(*tm.rates[0][1], 1.0);
  EXPECT_GT(*tm.rates[1][0], 0.0);
  EXPECT_LT(*tm.rates[1][0], 1.0);
  EXPECT_TRUE(tm.warnings.empty());
}

TEST_F(HarnessTest, EmptyPoolIsAbsentWithWarning) {
  const std::vector<NamedModel> zoo = {{"a", setup_->model}, {"b", setup_->model}};
  BenchmarkConfig config = small_config();
  std::vector<AdversarialPool> pools{
      build_pool("a", *setup_->model, setup_->data.test, map_,
                 AttackSelector::distribution(), config, 3),
      AdversarialPool{"b", {}}};
  ASSERT_EQ(pools[0].entries.size(), 3u);
  const TransferMatrix tm = build_transfer_matrix(zoo, pools, config.attack.budget, 5);
  EXPECT_FALSE(tm.rates[1][0].has_value());
  EXPECT_FALSE(tm.rates[1][1].has_value());
  EXPECT_EQ(tm.sample_counts[1], 0u);
  EXPECT_EQ(*tm.rates[0][0], 1.0);
  EXPECT_EQ(tm.warnings.size(), 2u);  // both pools are short of 5
  EXPECT_NE(transfer_csv(tm).find("b,,,0"), std::string::npos);
}

TEST_F(HarnessTest, AblationSelectorRuns) {
  BenchmarkConfig config = small_config();
  config.max_inputs = 4;
  const BenchmarkReport r =
      run_benchmark(*setup_->model, setup_->data.test, map_,
                    AttackSelector::ablation(AblationFlags::all_off()), config);
  EXPECT_EQ(r.attack, "ablation:ql");
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.outcome.queries, rec.outcome.iterations * (config.attack.batch_size + 1));
  }
}

}  // namespace
}  // namespace distattack
