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

#ifndef KGMIA_RUN_CONFIG_H_
#define KGMIA_RUN_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "kgmia/attack_classifier.h"
#include "kgmia/attacks.h"
#include "kgmia/kge_model.h"
#include "kgmia/oracle.h"
#include "kgmia/trainer.h"

namespace kgmia {

// Training regimes as epoch multipliers over the configured epoch count.
enum class Regime : uint8_t { kEarlyStop = 0, kDefault = 1, kOverfit = 2 };
inline constexpr Regime kAllRegimes[] = {Regime::kEarlyStop, Regime::kDefault,
                                         Regime::kOverfit};

std::string_view RegimeName(Regime regime);  // early-stop, default, overfit
absl::StatusOr<Regime> ParseRegime(std::string_view name);
double RegimeMultiplier(Regime regime);      // 0.1, 1, 5
uint32_t RegimeEpochs(uint32_t base_epochs, Regime regime);  // at least 1

// `base` retargeted to another architecture. Models sharing base's loss keep
// its hyperparameters; the others start from their own defaults and inherit
// the dimension, epochs, batch size, negatives, seed and jobs.
TrainConfig ConfigForModel(const TrainConfig& base, ModelKind kind);

// Everything that determines one experiment run.
struct RunConfig {
  std::string dataset_name = "dataset";
  std::vector<std::string> dataset_paths;
  // Target hyperparameters before the regime is applied.
  TrainConfig train;
  Regime regime = Regime::kDefault;
  AttackKind attack = AttackKind::kTransfer;
  LossMetric loss_metric = LossMetric::kLogistic;
  double pla_margin = 4.0;
  uint32_t pla_corruptions = 1;
  // Shadow architecture; the target's when unset.
  std::optional<ModelKind> shadow_model;
  // Explicit shadow hyperparameters; wins over shadow_model. The regime and
  // the attack seed still apply.
  std::optional<TrainConfig> shadow_train;
  ClassifierConfig classifier;
  ThresholdMode threshold_mode = ThresholdMode::kPerRelation;
  // Share of the target training split used to fit classification
  // thresholds; with holdout those triples are left out of training.
  double calibration_fraction = 0.1;
  bool calibration_holdout = false;
  std::string output_dir;
  uint64_t seed = 0;
  // Seed of every attacker-side draw; derived from `seed` when unset.
  std::optional<uint64_t> attack_seed;
  uint32_t jobs = 1;

  absl::Status Validate() const;
  // Sorted "key=value" lines covering every field.
  std::string Canonical() const;
  // 16 hex digits of the FNV-1a hash of Canonical().
  std::string Fingerprint() const;

  uint64_t AttackSeed() const;
  TrainConfig TargetTrainConfig() const;
  TrainConfig ShadowTrainConfig() const;
};

}  // namespace kgmia

#endif  // KGMIA_RUN_CONFIG_H_
