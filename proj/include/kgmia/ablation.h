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

#ifndef KGMIA_ABLATION_H_
#define KGMIA_ABLATION_H_

#include <memory>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "kgmia/kge_model.h"
#include "kgmia/report.h"
#include "kgmia/run_config.h"
#include "kgmia/triple_store.h"

namespace kgmia {

enum class AblationAxis : uint8_t { kShadowDataset = 0, kShadowModel = 1 };
std::string_view AblationAxisName(AblationAxis axis);  // dataset, model
absl::StatusOr<AblationAxis> ParseAblationAxis(std::string_view name);

struct NamedDataset {
  std::string name;
  std::shared_ptr<const TripleStore> store;
};

// Rows are targets and columns are shadows, both ranging over the axis
// values. The dataset axis uses exactly one model (base.train.model when
// `models` is empty); the model axis uses exactly one dataset.
struct AblationSpec {
  AblationAxis axis = AblationAxis::kShadowModel;
  std::vector<NamedDataset> datasets;
  std::vector<ModelKind> models;
  // Hyperparameters per entry of `models`, used for targets and shadows.
  // ConfigForModel(base.train, kind) when empty.
  std::vector<TrainConfig> model_configs;
  // Shared settings; the attack is always the transfer attack. base.seed
  // splits every dataset and trains every target; cell (i, j) uses attack
  // seed DeriveSeed(base.seed, i, j). base.jobs cells run at once.
  RunConfig base;
};

struct AblationCell {
  bool ok = false;
  std::string error;
  AttackReport report;
  // Run configuration of the cell. On the diagonal, RunExperiment with it
  // reproduces the cell.
  RunConfig config;
};

struct AblationGrid {
  AblationAxis axis = AblationAxis::kShadowModel;
  std::vector<std::string> targets;
  std::vector<std::string> shadows;
  std::vector<std::vector<AblationCell>> cells;  // [target][shadow]
};

// Failed targets or cells are recorded in the grid; only an invalid spec is
// an error.
absl::StatusOr<AblationGrid> RunAblation(const AblationSpec& spec);

// Accuracy matrix: header "target,<shadow>...", one row per target, "failed"
// for failed cells.
std::string FormatAblationMatrixCsv(const AblationGrid& grid);
// Every cell as an AttackReport row, with target and shadow columns first.
std::string FormatAblationCellsCsv(const AblationGrid& grid);
// Fixed-width accuracy table with a shade per cell.
std::string FormatHeatTable(const AblationGrid& grid);

}  // namespace kgmia

#endif  // KGMIA_ABLATION_H_
