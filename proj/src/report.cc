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

#include "distattack/report.h"

#include <cstdio>
#include <sstream>

#include "distattack/serialization.h"
#include "json.hpp"

namespace distattack {
namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json outcome_json(const AttackOutcome& o, bool timing) {
  json j;
  j["success"] = o.success;
  j["adversarial"] = o.adversarial ? json(*o.adversarial) : json(nullptr);
  j["adversarial_query_seed"] = o.adversarial_query_seed;
  j["queries"] = o.queries;
  j["iterations"] = o.iterations;
  j["first_success_iter"] =
      o.first_success_iter ? json(*o.first_success_iter) : json(nullptr);
  j["loss_trace"] = o.loss_trace;
  j["final_mu"] = o.final_params.mu;
  j["final_sigma"] = o.final_params.sigma;
  if (timing) j["wall_seconds"] = o.wall_seconds;
  return j;
}

AttackOutcome outcome_from(const json& j) {
  AttackOutcome o;
  o.success = j.at("success").get<bool>();
  if (!j.at("adversarial").is_null()) o.adversarial = j.at("adversarial").get<Vector>();
  o.adversarial_query_seed = j.at("adversarial_query_seed").get<std::uint64_t>();
  o.queries = j.at("queries").get<std::size_t>();
  o.iterations = j.at("iterations").get<std::size_t>();
  if (!j.at("first_success_iter").is_null()) {
    o.first_success_iter = j.at("first_success_iter").get<std::size_t>();
  }
  o.loss_trace = j.at("loss_trace").get<Vector>();
  o.final_params.mu = j.at("final_mu").get<Vector>();
  o.final_params.sigma = j.at("final_sigma").get<double>();
  if (j.contains("wall_seconds")) o.wall_seconds = j.at("wall_seconds").get<double>();
  return o;
}

}  // namespace

std::string report_csv(const BenchmarkReport& report) {
  std::ostringstream os;
  os << "input_id,success,queries,first_success_iter,final_loss\n";
  for (const auto& rec : report.records) {
    const AttackOutcome& o = rec.outcome;
    os << rec.input_id << ',' << (o.success ? 1 : 0) << ',' << o.queries << ',';
    if (o.first_success_iter) os << *o.first_success_iter;
    os << ',';
    if (!o.loss_trace.empty()) os << num(o.loss_trace.back());
    os << '\n';
  }
  return os.str();
}

std::string report_json(const BenchmarkReport& report, const ExportOptions& options) {
  json doc;
  doc["format"] = "distattack.report";
  doc["version"] = 1;
  doc["attack"] = report.attack;
  doc["config"] = report.config;
  doc["max_iterations"] = report.max_iterations;
  doc["success_rate"] = report.success_rate;
  doc["success_curve"] = report.success_curve;
  doc["total_queries"] = report.total_queries;
  doc["mean_queries_per_success"] = report.mean_queries_per_success;
  doc["median_queries_per_success"] = report.median_queries_per_success;
  doc["p90_queries_per_success"] = report.p90_queries_per_success;
  doc["skipped_misclassified"] = report.skipped_misclassified;
  doc["warnings"] = report.warnings;
  if (options.include_timing) doc["wall_seconds"] = report.wall_seconds;
  json records = json::array();
  for (const auto& rec : report.records) {
    json r;
    r["input_id"] = rec.input_id;
    r["label"] = rec.label;
    r["input"] = rec.input;
    r["outcome"] = outcome_json(rec.outcome, options.include_timing);
    records.push_back(std::move(r));
  }
  doc["records"] = std::move(records);
  return doc.dump(1) + "\n";
}

BenchmarkReport parse_report_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    BenchmarkReport r;
    r.attack = doc.at("attack").get<std::string>();
    r.config = doc.at("config").get<std::map<std::string, std::string>>();
    r.max_iterations = doc.at("max_iterations").get<std::size_t>();
    r.success_rate = doc.at("success_rate").get<double>();
    r.success_curve = doc.at("success_curve").get<Vector>();
    r.total_queries = doc.at("total_queries").get<std::size_t>();
    r.mean_queries_per_success = doc.at("mean_queries_per_success").get<double>();
    r.median_queries_per_success = doc.at("median_queries_per_success").get<double>();
    r.p90_queries_per_success = doc.at("p90_queries_per_success").get<double>();
    r.skipped_misclassified = doc.at("skipped_misclassified").get<std::size_t>();
    r.warnings = doc.at("warnings").get<std::vector<std::string>>();
    if (doc.contains("wall_seconds")) r.wall_seconds = doc.at("wall_seconds").get<double>();
    for (const auto& j : doc.at("records")) {
      InputRecord rec;
      rec.input_id = j.at("input_id").get<std::size_t>();
      rec.label = j.at("label").get<std::size_t>();
      rec.input = j.at("input").get<Vector>();
      rec.outcome = outcome_from(j.at("outcome"));
      r.records.push_back(std::move(rec));
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report document: ") + e.what());
  }
}

std::string report_svg(const BenchmarkReport& report) {
  constexpr double kWidth = 480, kHeight = 320, kMargin = 40;
  const double plot_w = kWidth - 2 * kMargin, plot_h = kHeight - 2 * kMargin;
  const std::size_t n = report.success_curve.size();
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
     << "\">\n";
  os << "<title>" << report.attack << ": success rate vs iteration</title>\n";
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << plot_w
     << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#888\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8
     << "\" text-anchor=\"middle\" font-size=\"12\">iteration</text>\n";
  os << "<text x=\"12\" y=\"" << kHeight / 2
     << "\" font-size=\"12\" transform=\"rotate(-90 12 " << kHeight / 2
     << ")\" text-anchor=\"middle\">success rate</text>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t t = 0; t < n; ++t) {
    const double px = kMargin + (n > 1 ? plot_w * static_cast<double>(t) /
                                             static_cast<double>(n - 1)
                                       : 0.0);
    const double py = kMargin + plot_h * (1.0 - report.success_curve[t]);
    os << (t ? " " : "") << num(px) << ',' << num(py);
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

void export_report(const BenchmarkReport& report, const std::filesystem::path& path,
                   ReportFormat format, const ExportOptions& options) {
  switch (format) {
    case ReportFormat::kCsv:
      write_text_file(path, report_csv(report));
      break;
    case ReportFormat::kJson:
      write_text_file(path, report_json(report, options));
      break;
    case ReportFormat::kSvgCurve:
      write_text_file(path, report_svg(report));
      break;
  }
}

std::string transfer_csv(const TransferMatrix& m) {
  std::ostringstream os;
  os << "source\\target";
  for (const auto& name : m.names) os << ',' << name;
  os << ",samples\n";
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    os << m.names[i];
    for (const auto& cell : m.rates[i]) {
      os << ',';
      if (cell) os << num(*cell);
    }
    os << ',' << m.sample_counts[i] << '\n';
  }
  return os.str();
}

std::string transfer_json(const TransferMatrix& m) {
  json doc;
  doc["names"] = m.names;
  json rows = json::array();
  for (const auto& row : m.rates) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(cell ? json(*cell) : json(nullptr));
    rows.push_back(std::move(r));
  }
  doc["rates"] = std::move(rows);
  doc["sample_counts"] = m.sample_counts;
  doc["warnings"] = m.warnings;
  return doc.dump(1) + "\n";
}

std::string efficiency_csv(const BenchmarkReport& report) {
  std::ostringstream os;
  os << "success_level,mean_queries\n";
  for (const auto& [level, q] : query_efficiency(report)) {
    os << num(level) << ',' << num(q) << '\n';
  }
  return os.str();
}

}  // namespace distattack
