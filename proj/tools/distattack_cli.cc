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

// Command-line front end: trains desk victims and runs attack benchmarks,
// ablations, sigma sweeps and transfer matrices against them.

#include <cstdio>
#include <exception>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "distattack/desk.h"
#include "distattack/harness.h"
#include "distattack/init.h"
#include "distattack/report.h"
#include "distattack/serialization.h"
#include "distattack/training.h"

namespace distattack {
namespace {

struct DataOptions {
  std::uint64_t data_seed = 1;
};

struct VictimOptions {
  std::string model_path;  // empty: train the desk victim in memory
  std::uint64_t train_seed = 1;
  std::string defense = "none";
};

struct AttackOptions {
  std::string norm = "linf";
  double tau = desk::kLinfTau;
  std::size_t max_iterations = 200;
  std::size_t batch_size = 100;
  double learning_rate = 0.03;
  double sigma = 0.1;
  double input_sigma = 0.001;
  bool no_early_stop = false;
  bool antithetic = false;
  bool serial = false;
  std::size_t seed_grid = 0;  // side of a square seed grid; 0 = input grid
  std::size_t max_inputs = 200;
  std::uint64_t master_seed = 0;
  int workers = 1;
};

struct OutputOptions {
  std::string csv, json, svg, efficiency;
  bool timing = false;
};

void add_data_options(CLI::App* app, DataOptions& o) {
  app->add_option("--data-seed", o.data_seed, "Seed of the blob dataset")->capture_default_str();
}

void add_victim_options(CLI::App* app, VictimOptions& o) {
  app->add_option("--model", o.model_path, "Weight file (default: train the desk victim)");
  app->add_option("--train-seed", o.train_seed, "Training seed when no --model is given")
      ->capture_default_str();
  app->add_option("--defense", o.defense,
                  "none | quantize:<levels> | sap | noise:<amplitude>")
      ->capture_default_str();
}

void add_attack_options(CLI::App* app, AttackOptions& o) {
  app->add_option("--norm", o.norm, "linf or l2")
      ->check(CLI::IsMember({"linf", "l2"}))
      ->capture_default_str();
  app->add_option("--tau", o.tau, "Perturbation radius")->capture_default_str();
  app->add_option("-T,--max-iterations", o.max_iterations)->capture_default_str();
  app->add_option("-b,--batch-size", o.batch_size)->capture_default_str();
  app->add_option("--learning-rate,--eta", o.learning_rate)->capture_default_str();
  app->add_option("--sigma", o.sigma, "Seed-space bandwidth")->capture_default_str();
  app->add_option("--input-sigma", o.input_sigma, "Input-space bandwidth of the baselines")
      ->capture_default_str();
  app->add_flag("--no-early-stop", o.no_early_stop, "Run all iterations");
  app->add_flag("--antithetic", o.antithetic, "Mirrored noise pairs");
  app->add_flag("--serial", o.serial, "Evaluate batches without OpenMP");
  app->add_option("--seed-grid", o.seed_grid, "Side of a lower-resolution square seed grid");
  app->add_option("--max-inputs", o.max_inputs)->capture_default_str();
  app->add_option("--master-seed", o.master_seed)->capture_default_str();
  app->add_option("--workers", o.workers, "Inputs attacked concurrently")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_output_options(CLI::App* app, OutputOptions& o) {
  app->add_option("--csv", o.csv, "Per-input CSV report");
  app->add_option("--json", o.json, "Full JSON report");
  app->add_option("--svg", o.svg, "Success-rate curve");
  app->add_option("--efficiency", o.efficiency, "Query-efficiency CSV");
  app->add_flag("--timing", o.timing, "Include wall-clock fields in JSON");
}

BenchmarkConfig benchmark_config(const AttackOptions& o) {
  BenchmarkConfig config;
  AttackConfig& a = config.attack;
  a.budget = {o.norm == "l2" ? Norm::kL2 : Norm::kLinf, o.tau};
  a.max_iterations = o.max_iterations;
  a.batch_size = o.batch_size;
  a.learning_rate = o.learning_rate;
  a.sigma = o.sigma;
  a.input_sigma = o.input_sigma;
  a.early_stop = !o.no_early_stop;
  a.antithetic = o.antithetic;
  a.execution = o.serial ? Execution::kSerial : Execution::kParallel;
  a.validate();
  config.max_inputs = o.max_inputs;
  config.master_seed = o.master_seed;
  config.workers = o.workers;
  return config;
}

SeedMap seed_map(const LabeledDataset& data, const AttackOptions& o) {
  if (o.seed_grid == 0) return SeedMap(data.input_dim());
  return SeedMap({o.seed_grid, o.seed_grid, data.shape.channels}, data.shape);
}

ModelPtr load_victim(const LabeledDataset& data, const VictimOptions& o) {
  MlpSpec spec = o.model_path.empty() ? train_mlp(data, desk::training(o.train_seed)).spec
                                      : load_model(o.model_path);
  if (spec.input_dim() != data.input_dim()) {
    throw ShapeError("model expects " + std::to_string(spec.input_dim()) +
                     " inputs, dataset has " + std::to_string(data.input_dim()));
  }
  return wrap_defense(std::make_shared<MlpModel>(std::move(spec)), parse_defense(o.defense));
}

void write_outputs(const BenchmarkReport& report, const OutputOptions& o) {
  const ExportOptions options{o.timing};
  if (!o.csv.empty()) export_report(report, o.csv, ReportFormat::kCsv, options);
  if (!o.json.empty()) export_report(report, o.json, ReportFormat::kJson, options);
  if (!o.svg.empty()) export_report(report, o.svg, ReportFormat::kSvgCurve, options);
  if (!o.efficiency.empty()) write_text_file(o.efficiency, efficiency_csv(report));
}

void print_summary(const BenchmarkReport& r) {
  std::printf("%s: success %.3f over %zu inputs (%zu misclassified skipped), "
              "mean queries/success %.0f, median %.0f\n",
              r.attack.c_str(), r.success_rate, r.records.size(), r.skipped_misclassified,
              r.mean_queries_per_success, r.median_queries_per_success);
  for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

// "name=path[@defense]" or "name=seed:<n>[@defense]".
NamedModel parse_zoo_entry(const std::string& text, const LabeledDataset& data) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("zoo entry '" + text + "' is not name=source[@defense]");
  }
  std::string source = text.substr(eq + 1);
  VictimOptions victim;
  if (const auto at = source.find('@'); at != std::string::npos) {
    victim.defense = source.substr(at + 1);
    source.resize(at);
  }
  if (source.rfind("seed:", 0) == 0) {
    victim.train_seed = std::stoull(source.substr(5));
  } else {
    victim.model_path = source;
  }
  return {text.substr(0, eq), load_victim(data, victim)};
}

std::vector<NamedModel> default_zoo(const LabeledDataset& data) {
  const std::vector<std::string> entries = {
      "vanilla-a=seed:1",
      "vanilla-b=seed:2",
      "quantize=seed:3@quantize:" + std::to_string(desk::kQuantizeLevels),
      "sap=seed:4@sap",
      "noise=seed:5@noise:0.1"};
  std::vector<NamedModel> zoo;
  for (const auto& e : entries) zoo.push_back(parse_zoo_entry(e, data));
  return zoo;
}

int run(int argc, char** argv) {
  CLI::App app{"Black-box adversarial attacks by learning a search distribution"};
  app.require_subcommand(1);

  DataOptions data_opts;
  VictimOptions victim_opts;
  AttackOptions attack_opts;
  OutputOptions out_opts;

  // train
  auto* train = app.add_subcommand("train", "Train a desk victim and save its weights");
  add_data_options(train, data_opts);
  TrainConfig train_config = desk::training(1);
  std::string train_out;
  train->add_option("--train-seed", train_config.seed)->capture_default_str();
  train->add_option("--hidden", train_config.hidden, "Hidden layer widths")
      ->capture_default_str();
  train->add_option("--epochs", train_config.epochs)->capture_default_str();
  train->add_option("--quantize", train_config.quantize_levels,
                    "Train with quantized activations (levels)");
  train->add_option("-o,--out", train_out, "Weight file")->required();

  // attack
  auto* attack = app.add_subcommand("attack", "Benchmark the attack on one victim");
  add_data_options(attack, data_opts);
  add_victim_options(attack, victim_opts);
  add_attack_options(attack, attack_opts);
  add_output_options(attack, out_opts);
  std::string init_path, save_init_path;
  std::size_t pool_size = 200;
  double init_jitter = 0.0;
  attack->add_option("--init", init_path, "Regression initializer for warm starts");
  attack->add_option("--fit-init", save_init_path,
                     "Fit a warm-start initializer on train-split adversarials, save it "
                     "and use it");
  attack->add_option("--pool-size", pool_size, "Pairs used by --fit-init")
      ->capture_default_str();
  attack->add_option("--init-jitter", init_jitter)->capture_default_str();
  attack->get_option("--init")->excludes(attack->get_option("--fit-init"));

  // curve
  auto* curve = app.add_subcommand(
      "curve", "Success-vs-iteration curve and query efficiency of a saved JSON report");
  std::string curve_in;
  curve->add_option("report", curve_in, "JSON report from `attack --json`")->required();
  curve->add_option("--svg", out_opts.svg, "Curve output");
  curve->add_option("--efficiency", out_opts.efficiency, "Query-efficiency CSV");
  curve->add_option("--csv", out_opts.csv, "Curve as iteration,success_rate CSV");

  // transfer
  auto* transfer = app.add_subcommand("transfer", "Transfer matrix over a model zoo");
  add_data_options(transfer, data_opts);
  add_attack_options(transfer, attack_opts);
  std::vector<std::string> zoo_entries;
  std::size_t transfer_count = 200;
  std::string transfer_csv_out, transfer_json_out;
  transfer->add_option("--zoo", zoo_entries,
                       "name=weights.json[@defense] or name=seed:<n>[@defense]; "
                       "default: two vanilla victims and three defended ones");
  transfer->add_option("--count", transfer_count, "Adversarial examples per source")
      ->capture_default_str();
  transfer->add_option("--csv", transfer_csv_out);
  transfer->add_option("--json", transfer_json_out);

  // ablate
  auto* ablate = app.add_subcommand("ablate", "Run the QL-to-full ablation ladder");
  add_data_options(ablate, data_opts);
  add_victim_options(ablate, victim_opts);
  add_attack_options(ablate, attack_opts);
  std::string ablate_csv;
  ablate->add_option("--csv", ablate_csv, "variant,success_rate,mean_queries rows");

  // sweep-sigma
  auto* sweep = app.add_subcommand("sweep-sigma", "Pick sigma by success rate");
  add_data_options(sweep, data_opts);
  add_victim_options(sweep, victim_opts);
  add_attack_options(sweep, attack_opts);
  std::vector<double> sigmas{0.01, 0.05, 0.1, 0.2, 0.5};
  sweep->add_option("--sigmas", sigmas)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  const LabeledDataset data = make_blobs(desk::blobs(data_opts.data_seed));

  if (*train) {
    const TrainResult result = train_mlp(data, train_config);
    save_model(result.spec, train_out);
    std::printf("train accuracy %.3f, test accuracy %.3f, final loss %.4f -> %s\n",
                result.train_accuracy, result.test_accuracy, result.final_loss,
                train_out.c_str());
    return 0;
  }

  if (*curve) {
    const BenchmarkReport report = parse_report_json(read_text_file(curve_in));
    if (!out_opts.svg.empty()) write_text_file(out_opts.svg, report_svg(report));
    if (!out_opts.efficiency.empty()) {
      write_text_file(out_opts.efficiency, efficiency_csv(report));
    }
    std::string rows = "iteration,success_rate\n";
    for (std::size_t t = 0; t < report.success_curve.size(); ++t) {
      rows += std::to_string(t) + ',' + std::to_string(report.success_curve[t]) + '\n';
    }
    if (out_opts.csv.empty()) {
      std::cout << rows;
    } else {
      write_text_file(out_opts.csv, rows);
    }
    return 0;
  }

  const BenchmarkConfig config = benchmark_config(attack_opts);
  const SeedMap map = seed_map(data, attack_opts);

  if (*transfer) {
    std::vector<NamedModel> zoo;
    if (zoo_entries.empty()) {
      zoo = default_zoo(data);
    } else {
      for (const auto& e : zoo_entries) zoo.push_back(parse_zoo_entry(e, data));
    }
    std::vector<AdversarialPool> pools;
    for (const auto& m : zoo) {
      pools.push_back(build_pool(m.name, *m.model, data.test, map,
                                 AttackSelector::distribution(), config, transfer_count));
    }
    const TransferMatrix tm =
        build_transfer_matrix(zoo, pools, config.attack.budget, transfer_count);
    std::cout << transfer_csv(tm);
    for (const auto& w : tm.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (!transfer_csv_out.empty()) write_text_file(transfer_csv_out, transfer_csv(tm));
    if (!transfer_json_out.empty()) write_text_file(transfer_json_out, transfer_json(tm));
    return 0;
  }

  const ModelPtr victim = load_victim(data, victim_opts);
  std::printf("victim %s, test accuracy %.3f\n", victim->describe().c_str(),
              accuracy(*victim, data.test));

  if (*attack) {
    AttackSelector selector;
    selector.init_jitter = init_jitter;
    if (!init_path.empty()) {
      selector.initializer = std::make_shared<RidgeInitializer>(load_initializer(init_path));
    } else if (!save_init_path.empty()) {
      const AdversarialPool pool = build_pool("train", *victim, data.train, map,
                                              AttackSelector::distribution(), config,
                                              pool_size);
      std::vector<AdversarialPair> pairs;
      for (const auto& e : pool.entries) pairs.emplace_back(e.input, e.adversarial);
      const RidgeInitializer init = fit_regression_initializer(pairs, map);
      save_initializer(init, save_init_path);
      std::printf("fitted warm start on %zu pairs -> %s\n", pairs.size(),
                  save_init_path.c_str());
      selector.initializer = std::make_shared<RidgeInitializer>(init);
    }
    const BenchmarkReport report = run_benchmark(*victim, data.test, map, selector, config);
    print_summary(report);
    write_outputs(report, out_opts);
    return 0;
  }

  if (*ablate) {
    std::string rows = "variant,success_rate,mean_queries_per_success\n";
    for (const AblationFlags& flags : ablation_ladder()) {
      const BenchmarkReport report =
          run_benchmark(*victim, data.test, map, AttackSelector::ablation(flags), config);
      print_summary(report);
      rows += flags.name() + ',' + std::to_string(report.success_rate) + ',' +
              std::to_string(report.mean_queries_per_success) + '\n';
    }
    if (!ablate_csv.empty()) write_text_file(ablate_csv, rows);
    return 0;
  }

  if (*sweep) {
    const SigmaSweep result = sweep_sigma(*victim, data.test, map,
                                          AttackSelector::distribution(), config, sigmas);
    for (const auto& [sigma, rate] : result.success_by_sigma) {
      std::printf("sigma %g: success %.3f\n", sigma, rate);
    }
    std::printf("best sigma %g\n", result.best_sigma);
    return 0;
  }
  return 0;
}

}  // namespace
}  // namespace distattack

int main(int argc, char** argv) {
  try {
    return distattack::run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
