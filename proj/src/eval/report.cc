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

#include "kgmia/report.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "fmt/format.h"
#include "kgmia/status_macros.h"
#include "kgmia/strings.h"

namespace kgmia {
namespace {

constexpr const char* kColumns[] = {
    "attack",   "model",  "dataset",       "regime",      "loss_metric",
    "seed",     "evaluated", "accuracy",   "f1",          "precision",
    "recall",   "overfit_level", "fingerprint", "decisions_path"};
constexpr size_t kNumColumns = std::size(kColumns);

std::string CsvField(std::string_view value) {
  if (value.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(value);
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one CSV line, honoring double-quoted fields.
absl::StatusOr<std::vector<std::string>> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) return absl::InvalidArgumentError("unterminated quoted field");
  return fields;
}

std::string Cell(double mean, double lo, double hi, size_t n) {
  if (n <= 1) return fmt::format("{:.4f}", mean);
  return fmt::format("{:.4f} [{:.4f}, {:.4f}]", mean, lo, hi);
}

}  // namespace

std::string ReportCsvHeader() {
  std::string out;
  for (size_t i = 0; i < kNumColumns; ++i) {
    if (i > 0) out += ',';
    out += kColumns[i];
  }
  out += '\n';
  return out;
}

std::string FormatReportCsvRow(const AttackReport& r) {
  return fmt::format(
      "{},{},{},{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{}\n",
      AttackKindName(r.attack), CsvField(r.model), CsvField(r.dataset),
      CsvField(r.regime), CsvField(r.loss_metric), r.seed, r.evaluated,
      r.accuracy, r.f1, r.precision, r.recall, r.overfit_level,
      CsvField(r.fingerprint), CsvField(r.decisions_path));
}

std::string FormatReportCsv(std::span<const AttackReport> reports) {
  std::string out = ReportCsvHeader();
  for (const AttackReport& r : reports) out += FormatReportCsvRow(r);
  return out;
}

absl::StatusOr<std::vector<AttackReport>> ParseReportCsv(std::string_view text) {
  std::vector<AttackReport> out;
  bool header = true;
  size_t line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    KGMIA_ASSIGN_OR_RETURN(std::vector<std::string> f, SplitCsvLine(line));
    if (f.size() != kNumColumns) {
      return absl::InvalidArgumentError(
          StrCat("report line ", line_no, ": expected ", kNumColumns,
                 " fields, got ", f.size()));
    }
    if (header) {
      header = false;
      if (f[0] == kColumns[0]) continue;
    }
    AttackReport r;
    KGMIA_ASSIGN_OR_RETURN(r.attack, ParseAttackKind(f[0]));
    r.model = f[1];
    r.dataset = f[2];
    r.regime = f[3];
    r.loss_metric = f[4];
    auto bad = [&](std::string_view what) {
      return absl::InvalidArgumentError(
          StrCat("report line ", line_no, ": bad ", what));
    };
    if (!ParseUint64(f[5], &r.seed)) return bad("seed");
    uint64_t evaluated = 0;
    if (!ParseUint64(f[6], &evaluated)) return bad("evaluated");
    r.evaluated = evaluated;
    double* reals[] = {&r.accuracy, &r.f1, &r.precision, &r.recall,
                       &r.overfit_level};
    for (size_t i = 0; i < std::size(reals); ++i) {
      if (!ParseDouble(f[7 + i], reals[i])) return bad(kColumns[7 + i]);
    }
    r.fingerprint = f[12];
    r.decisions_path = f[13];
    out.push_back(std::move(r));
  }
  return out;
}

std::string FormatMarkdownSummary(std::span<const AttackReport> reports) {
  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  std::map<Key, std::vector<const AttackReport*>> groups;
  for (const AttackReport& r : reports) {
    std::string attack(AttackKindName(r.attack));
    if (!r.loss_metric.empty()) attack += StrCat(" (", r.loss_metric, ")");
    groups[{r.dataset, r.model, r.regime, attack}].push_back(&r);
  }
  std::string out =
      "| Dataset | Model | Regime | Attack | Runs | Accuracy | F1 | Precision "
      "| Recall | Overfit |\n"
      "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& [key, rows] : groups) {
    std::string cells;
    auto column = [&](double AttackReport::*field) {
      double sum = 0.0;
      double lo = rows.front()->*field;
      double hi = lo;
      for (const AttackReport* r : rows) {
        sum += r->*field;
        lo = std::min(lo, r->*field);
        hi = std::max(hi, r->*field);
      }
      cells += " | " + Cell(sum / rows.size(), lo, hi, rows.size());
    };
    column(&AttackReport::accuracy);
    column(&AttackReport::f1);
    column(&AttackReport::precision);
    column(&AttackReport::recall);
    column(&AttackReport::overfit_level);
    out += fmt::format("| {} | {} | {} | {} | {}{} |\n", std::get<0>(key),
                       std::get<1>(key), std::get<2>(key), std::get<3>(key),
                       rows.size(), cells);
  }
  return out;
}

}  // namespace kgmia
