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

#ifndef DISTATTACK_REPORT_H_
#define DISTATTACK_REPORT_H_

#include <filesystem>
#include <string>

#include "distattack/harness.h"

namespace distattack {

enum class ReportFormat { kCsv, kJson, kSvgCurve };

struct ExportOptions {
  // Wall-clock fields vary run to run; left out by default so that reports
  // from the same master seed are byte-identical.
  bool include_timing = false;
};

// Columns: input_id,success,queries,first_success_iter,final_loss
std::string report_csv(const BenchmarkReport& report);
std::string report_json(const BenchmarkReport& report, const ExportOptions& options = {});
BenchmarkReport parse_report_json(const std::string& text);
// Cumulative success rate against iteration as a monotone polyline.
std::string report_svg(const BenchmarkReport& report);

void export_report(const BenchmarkReport& report, const std::filesystem::path& path,
                   ReportFormat format, const ExportOptions& options = {});

std::string transfer_csv(const TransferMatrix& matrix);
std::string transfer_json(const TransferMatrix& matrix);

// success_level,mean_queries rows from query_efficiency().
std::string efficiency_csv(const BenchmarkReport& report);

}  // namespace distattack

#endif  // DISTATTACK_REPORT_H_
