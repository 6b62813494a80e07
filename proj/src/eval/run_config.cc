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

#include "kgmia/run_config.h"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"
#include "kgmia/rng.h"
#include "kgmia/status_macros.h"
#include "kgmia/strings.h"

namespace kgmia {

std::string_view RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kEarlyStop:
      return "early-stop";
    case Regime::kDefault:
      return "default";
    case Regime::kOverfit:
      return "overfit";
  }
  return "?";
}

absl::StatusOr<Regime> ParseRegime(std::string_view name) {
  const std::string lower = AsciiToLower(name);
  for (Regime r : kAllRegimes) {
    if (lower == RegimeName(r)) return r;
  }
  if (lower == "early" || lower == "early_stop") return Regime::kEarlyStop;
  return absl::InvalidArgumentError(StrCat(
      "unknown regime '", name, "' (expected early-stop, default or overfit)"));
}

double RegimeMultiplier(Regime regime) {
  switch (regime) {
    case Regime::kEarlyStop:
      return 0.1;
    case Regime::kDefault:
      return 1.0;
    case Regime::kOverfit:
      return 5.0;
  }
  return 1.0;
}

uint32_t RegimeEpochs(uint32_t base_epochs, Regime regime) {
  const double e = std::round(base_epochs * RegimeMultiplier(regime));
  return static_cast<uint32_t>(std::max(1.0, e));
}

TrainConfig ConfigForModel(const TrainConfig& base, ModelKind kind) {
  if (NativeLossKind(kind) == base.loss) {
    TrainConfig c = base;
    c.model = kind;
    return c;
  }
  TrainConfig c = DefaultTrainConfig(kind);
  c.dim = base.dim;
  c.epochs = base.epochs;
  c.batch_size = base.batch_size;
  c.negatives_per_positive = base.negatives_per_positive;
  c.seed = base.seed;
  c.jobs = base.jobs;
  c.filtered_negatives = base.filtered_negatives;
  c.corrupt_relations = base.corrupt_relations;
  return c;
}

absl::Status RunConfig::Validate() const {
  KGMIA_RETURN_IF_ERROR(train.Validate());
  if (shadow_train) KGMIA_RETURN_IF_ERROR(shadow_train->Validate());
  if (!(calibration_fraction > 0 && calibration_fraction <= 1)) {
    return absl::InvalidArgumentError("calibration fraction must be in (0, 1]");
  }
  if (!(pla_margin > 0)) {
    return absl::InvalidArgumentError("PLA margin must be positive");
  }
  if (pla_corruptions == 0) {
    return absl::InvalidArgumentError("PLA needs at least one corruption");
  }
  if (jobs == 0) return absl::InvalidArgumentError("jobs must be at least 1");
  return absl::OkStatus();
}

std::string RunConfig::Canonical() const {
  std::string out;
  auto add = [&out](std::string_view key, const auto& value) {
    fmt::format_to(std::back_inserter(out), "{}={}\n", key, value);
  };
  add("attack", AttackKindName(attack));
  add("attack_seed", attack_seed ? fmt::format("{}", *attack_seed) : "derived");
  add("calibration_fraction", fmt::format("{:.17g}", calibration_fraction));
  add("calibration_holdout", calibration_holdout ? 1 : 0);
  add("classifier.batch_size", classifier.batch_size);
  add("classifier.epochs", classifier.epochs);
  add("classifier.hidden", classifier.hidden);
  add("classifier.learning_rate", fmt::format("{:.17g}", classifier.learning_rate));
  add("classifier.standardize", classifier.standardize ? 1 : 0);
  add("dataset_name", dataset_name);
  for (size_t i = 0; i < dataset_paths.size(); ++i) {
    add(fmt::format("dataset_path.{}", i), dataset_paths[i]);
  }
  add("jobs", jobs);
  add("loss_metric", LossMetricName(loss_metric));
  add("output_dir", output_dir);
  add("pla_corruptions", pla_corruptions);
  add("pla_margin", fmt::format("{:.17g}", pla_margin));
  add("regime", RegimeName(regime));
  add("seed", seed);
  add("shadow_model", shadow_model ? ModelKindName(*shadow_model) : "target");
  add("threshold_mode", ThresholdModeName(threshold_mode));
  auto add_train = [&out](std::string_view prefix, const TrainConfig& c) {
    const std::string lines = c.Canonical();
    for (std::string_view line : Split(lines, '\n', true)) {
      out += prefix;
      out += line;
      out += '\n';
    }
  };
  if (shadow_train) add_train("shadow_train.", *shadow_train);
  add_train("train.", train);
  return out;
}

std::string RunConfig::Fingerprint() const {
  return fmt::format("{:016x}", Fnv1a64(Canonical()));
}

uint64_t RunConfig::AttackSeed() const {
  return attack_seed ? *attack_seed : DeriveSeed(seed, "attack");
}

TrainConfig RunConfig::TargetTrainConfig() const {
  TrainConfig c = train;
  c.epochs = RegimeEpochs(train.epochs, regime);
  c.seed = DeriveSeed(seed, "target");
  return c;
}

TrainConfig RunConfig::ShadowTrainConfig() const {
  TrainConfig c = shadow_train   ? *shadow_train
                  : shadow_model ? ConfigForModel(train, *shadow_model)
                                 : train;
  c.epochs = RegimeEpochs(c.epochs, regime);
  c.seed = DeriveSeed(AttackSeed(), "shadow");
  return c;
}

}  // namespace kgmia
