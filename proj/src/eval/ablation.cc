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

#include "kgmia/ablation.h"

#include <optional>

#include "fmt/format.h"
#include "kgmia/experiment.h"
#include "kgmia/parallel.h"
#include "kgmia/split.h"
#include "kgmia/status_macros.h"
#include "kgmia/strings.h"

namespace kgmia {

std::string_view AblationAxisName(AblationAxis axis) {
  return axis == AblationAxis::kShadowDataset ? "dataset" : "model";
}

absl::StatusOr<AblationAxis> ParseAblationAxis(std::string_view name) {
  const std::string lower = AsciiToLower(name);
  if (lower == "dataset") return AblationAxis::kShadowDataset;
  if (lower == "model") return AblationAxis::kShadowModel;
  return absl::InvalidArgumentError(
      StrCat("unknown ablation axis '", name, "' (expected dataset or model)"));
}

absl::StatusOr<AblationGrid> RunAblation(const AblationSpec& spec) {
  KGMIA_RETURN_IF_ERROR(spec.base.Validate());
  const bool by_dataset = spec.axis == AblationAxis::kShadowDataset;
  std::vector<ModelKind> models = spec.models;
  if (models.empty()) models.push_back(spec.base.train.model);
  if (spec.datasets.empty()) {
    return absl::InvalidArgumentError("ablation needs at least one dataset");
  }
  for (const NamedDataset& d : spec.datasets) {
    if (d.store == nullptr) {
      return absl::InvalidArgumentError(
          StrCat("dataset '", d.name, "' has no triples loaded"));
    }
  }
  if (by_dataset && models.size() != 1) {
    return absl::InvalidArgumentError(
        "the dataset axis takes exactly one model");
  }
  if (!spec.model_configs.empty() && spec.model_configs.size() != models.size()) {
    return absl::InvalidArgumentError(
        "model_configs must have one entry per model");
  }
  if (!by_dataset && spec.datasets.size() != 1) {
    return absl::InvalidArgumentError("the model axis takes exactly one dataset");
  }

  AblationGrid grid;
  grid.axis = spec.axis;
  const size_t n = by_dataset ? spec.datasets.size() : models.size();
  for (size_t i = 0; i < n; ++i) {
    const std::string label =
        by_dataset ? spec.datasets[i].name
                   : std::string(ModelKindName(models[i]));
    grid.targets.push_back(label);
    grid.shadows.push_back(label);
  }
  grid.cells.assign(n, std::vector<AblationCell>(n));

  // Splits, one per dataset.
  std::vector<absl::StatusOr<SplitPlan>> plans;
  for (const NamedDataset& d : spec.datasets) {
    plans.push_back(MakeSplit(*d.store, spec.base.seed));
  }
  auto dataset_of = [&](size_t i) -> size_t { return by_dataset ? i : 0; };

  auto model_config = [&](size_t m) -> TrainConfig {
    if (!spec.model_configs.empty()) {
      TrainConfig c = spec.model_configs[m];
      c.model = models[m];
      return c;
    }
    return ConfigForModel(spec.base.train, models[m]);
  };
  std::vector<RunConfig> row_configs(n, spec.base);
  for (size_t i = 0; i < n; ++i) {
    RunConfig& c = row_configs[i];
    c.attack = AttackKind::kTransfer;
    c.dataset_name = spec.datasets[dataset_of(i)].name;
    c.train = model_config(by_dataset ? 0 : i);
  }

  // Targets, one per row.
  std::vector<std::optional<PreparedTarget>> targets(n);
  std::vector<std::string> target_errors(n);
  (void)ParallelFor(n, spec.base.jobs, [&](size_t i) -> absl::Status {
    const size_t d = dataset_of(i);
    if (!plans[d].ok()) {
      target_errors[i] = plans[d].status().ToString();
      return absl::OkStatus();
    }
    absl::StatusOr<PreparedTarget> t =
        PrepareTarget(*spec.datasets[d].store, *plans[d], row_configs[i]);
    if (t.ok()) {
      targets[i].emplace(*std::move(t));
    } else {
      target_errors[i] = t.status().ToString();
    }
    return absl::OkStatus();
  });

  (void)ParallelFor(n * n, spec.base.jobs, [&](size_t k) -> absl::Status {
    const size_t i = k / n;
    const size_t j = k % n;
    AblationCell& cell = grid.cells[i][j];
    cell.config = row_configs[i];
    cell.config.attack_seed = DeriveSeed(spec.base.seed, i, j);
    if (!by_dataset) {
      cell.config.shadow_model = models[j];
      if (!spec.model_configs.empty()) cell.config.shadow_train = model_config(j);
    }
    if (!targets[i].has_value()) {
      cell.error = StrCat("target failed: ", target_errors[i]);
      return absl::OkStatus();
    }
    const size_t target_data = dataset_of(i);
    const size_t shadow_data = by_dataset ? j : 0;
    if (!plans[shadow_data].ok()) {
      cell.error = StrCat("shadow split failed: ",
                          plans[shadow_data].status().ToString());
      return absl::OkStatus();
    }
    const SplitPlan& target_plan = *plans[target_data];
    const SplitPlan& shadow_plan = *plans[shadow_data];
    const EvaluationSet eval = BalancedEvaluationSet(
        target_plan.target_train, target_plan.target_test,
        DeriveSeed(cell.config.AttackSeed(), "evaluation"));
    const ShadowData shadow{shadow_plan.shadow_train, shadow_plan.shadow_test,
                            spec.datasets[shadow_data].store->vocab_sizes()};
    absl::StatusOr<AttackRun> run =
        RunAttack(targets[i]->oracle, eval, &shadow, cell.config);
    if (!run.ok()) {
      cell.error = run.status().ToString();
      return absl::OkStatus();
    }
    cell.report = MakeReport(cell.config, *run, targets[i]->overfit_level);
    cell.ok = true;
    return absl::OkStatus();
  });
  return grid;
}

std::string FormatAblationMatrixCsv(const AblationGrid& grid) {
  std::string out = "target";
  for (const std::string& s : grid.shadows) out += "," + s;
  out += '\n';
  for (size_t i = 0; i < grid.targets.size(); ++i) {
    out += grid.targets[i];
    for (const AblationCell& cell : grid.cells[i]) {
      out += cell.ok ? fmt::format(",{:.6f}", cell.report.accuracy) : ",failed";
    }
    out += '\n';
  }
  return out;
}

std::string FormatAblationCellsCsv(const AblationGrid& grid) {
  std::string out = "target,shadow,status,error," + ReportCsvHeader();
  for (size_t i = 0; i < grid.targets.size(); ++i) {
    for (size_t j = 0; j < grid.shadows.size(); ++j) {
      const AblationCell& cell = grid.cells[i][j];
      std::string error = cell.error;
      for (char& c : error) {
        if (c == ',' || c == '\n' || c == '"') c = ' ';
      }
      out += fmt::format("{},{},{},{},", grid.targets[i], grid.shadows[j],
                         cell.ok ? "ok" : "failed", error);
      out += FormatReportCsvRow(cell.report);
    }
  }
  return out;
}

std::string FormatHeatTable(const AblationGrid& grid) {
  static constexpr const char* kShades[] = {" ", "░", "▒", "▓", "█"};
  size_t width = 6;
  for (const std::string& s : grid.targets) width = std::max(width, s.size());
  for (const std::string& s : grid.shadows) width = std::max(width, s.size());
  std::string out = fmt::format("{:<{}} |", "target\\shadow", width + 8);
  for (const std::string& s : grid.shadows) out += fmt::format(" {:>{}}", s, width + 2);
  out += '\n';
  for (size_t i = 0; i < grid.targets.size(); ++i) {
    out += fmt::format("{:<{}} |", grid.targets[i], width + 8);
    for (const AblationCell& cell : grid.cells[i]) {
      if (!cell.ok) {
        out += fmt::format(" {:>{}}", "failed", width + 2);
        continue;
      }
      const double a = cell.report.accuracy;
      // 0.5 and below is blank; each shade spans 0.1 above it.
      const int level = std::clamp(static_cast<int>((a - 0.5) / 0.1) + 1, 0, 4);
      out += fmt::format(" {:>{}.3f} {}", a, width, a <= 0.5 ? " " : kShades[level]);
    }
    out += '\n';
  }
  out += "shade: blank <= 0.5 < ░ < 0.6 < ▒ < 0.7 < ▓ < 0.8 < █\n";
  return out;
}

}  // namespace kgmia
