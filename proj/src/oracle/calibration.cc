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

#include <algorithm>
#include <utility>
#include <vector>

#include "kgmia/strings.h"
#include "kgmia/oracle.h"
#include "kgmia/status_macros.h"

namespace kgmia {

std::string_view ThresholdModeName(ThresholdMode mode) {
  return mode == ThresholdMode::kPerRelation ? "per_relation" : "global";
}

absl::StatusOr<ThresholdMode> ParseThresholdMode(std::string_view name) {
  if (name == "per_relation") return ThresholdMode::kPerRelation;
  if (name == "global") return ThresholdMode::kGlobal;
  return absl::InvalidArgumentError(StrCat("unknown threshold mode: ", name));
}

ThresholdChoice ChooseThreshold(std::span<const double> positive_scores,
                                std::span<const double> negative_scores) {
  std::vector<std::pair<double, bool>> all;
  all.reserve(positive_scores.size() + negative_scores.size());
  for (double s : positive_scores) all.emplace_back(s, true);
  for (double s : negative_scores) all.emplace_back(s, false);
  std::sort(all.begin(), all.end());

  const double num_pos = static_cast<double>(positive_scores.size());
  const double num_neg = static_cast<double>(negative_scores.size());
  size_t pos_le = 0, neg_le = 0;
  ThresholdChoice best{0.0, -1.0};
  for (size_t i = 0; i < all.size();) {
    const double value = all[i].first;
    for (; i < all.size() && all[i].first == value; ++i) {
      (all[i].second ? pos_le : neg_le) += 1;
    }
    const double threshold =
        i < all.size() ? value + (all[i].first - value) / 2 : value;
    const double acc =
        0.5 * (pos_le / num_pos + (num_neg - static_cast<double>(neg_le)) / num_neg);
    if (acc > best.accuracy) best = {threshold, acc};
  }
  return best;
}

double ClassifierCalibration::ThresholdFor(RelationId relation) const {
  if (mode == ThresholdMode::kPerRelation) {
    auto it = per_relation.find(relation);
    if (it != per_relation.end()) return it->second.threshold;
  }
  return global_threshold;
}

std::string FormatCalibration(const ClassifierCalibration& calibration) {
  std::string out = fmt::format(
      "global\t{:.17g}\t{:.17g}\t{}\n", calibration.global_threshold,
      calibration.global_accuracy, ThresholdModeName(calibration.mode));
  for (const auto& [relation, t] : calibration.per_relation) {
    out += fmt::format("{}\t{:.17g}\t{:.17g}\n", relation, t.threshold,
                       t.accuracy);
  }
  return out;
}

absl::StatusOr<ClassifierCalibration> ParseCalibration(std::string_view text) {
  ClassifierCalibration cal;
  bool seen_header = false;
  size_t line_no = 0;
  for (std::string_view line : Split(text, '\n', true)) {
    ++line_no;
    std::vector<std::string_view> f = Split(line, '\t');
    auto bad = [&] {
      return absl::InvalidArgumentError(
          StrCat("calibration line ", line_no, ": malformed"));
    };
    if (!seen_header) {
      if (f.size() != 4 || f[0] != "global") return bad();
      if (!ParseDouble(f[1], &cal.global_threshold) ||
          !ParseDouble(f[2], &cal.global_accuracy)) {
        return bad();
      }
      KGMIA_ASSIGN_OR_RETURN(cal.mode, ParseThresholdMode(f[3]));
      seen_header = true;
      continue;
    }
    uint32_t relation = 0;
    RelationThreshold t;
    if (f.size() != 3 || !ParseUint32(f[0], &relation) ||
        !ParseDouble(f[1], &t.threshold) ||
        !ParseDouble(f[2], &t.accuracy)) {
      return bad();
    }
    cal.per_relation[relation] = t;
  }
  if (!seen_header) {
    return absl::InvalidArgumentError("calibration file has no header row");
  }
  return cal;
}

absl::Status SaveCalibration(const ClassifierCalibration& calibration,
                             const std::string& path) {
  return WriteStringToFile(path, FormatCalibration(calibration));
}

absl::StatusOr<ClassifierCalibration> LoadCalibration(const std::string& path) {
  KGMIA_ASSIGN_OR_RETURN(std::string text, ReadFileToString(path));
  return ParseCalibration(text);
}

}  // namespace kgmia
