// Copyright 2026 The KGMIA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KGMIA_REPORT_H_
#define KGMIA_REPORT_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "kgmia/attacks.h"

namespace kgmia {

struct AttackReport {
  AttackKind attack = AttackKind::kTransfer;
  std::string model;
  std::string dataset;
  double accuracy = 0.0;
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double overfit_level = 0.0;
  std::string fingerprint;
  std::string decisions_path;
  // Extra context, also written to the CSV.
  std::string regime;
  std::string loss_metric;
  uint64_t seed = 0;
  size_t evaluated = 0;
};

// One CSV header and one row per report.
std::string ReportCsvHeader();
std::string FormatReportCsvRow(const AttackReport& report);
std::string FormatReportCsv(std::span<const AttackReport> reports);
absl::StatusOr<std::vector<AttackReport>> ParseReportCsv(std::string_view text);

// Markdown table grouped by dataset, model and attack. Groups with several
// runs show the mean followed by the [min, max] range.
std::string FormatMarkdownSummary(std::span<const AttackReport> reports);

}  // namespace kgmia

#endif  // KGMIA_REPORT_H_
