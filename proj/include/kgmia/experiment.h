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

#ifndef KGMIA_EXPERIMENT_H_
#define KGMIA_EXPERIMENT_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "kgmia/attacks.h"
#include "kgmia/metrics.h"
#include "kgmia/oracle.h"
#include "kgmia/report.h"
#include "kgmia/run_config.h"
#include "kgmia/split.h"
#include "kgmia/triple_store.h"

namespace kgmia {

// A trained, calibrated target and the numbers the owner knows about it.
struct PreparedTarget {
  TrainConfig config;
  TargetOracle oracle;
  std::vector<double> epoch_loss;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double overfit_level = 0.0;
};

// Triples used to fit thresholds: a seeded share of the training split.
std::vector<Triple> CalibrationSample(std::span<const Triple> target_train,
                                      const RunConfig& config);

// Fits thresholds on the calibration sample of `target_train`.
absl::Status CalibrateTarget(TargetOracle& oracle,
                             std::span<const Triple> target_train,
                             const RunConfig& config);

// Trains on the target-train part (minus the calibration sample in holdout
// mode), calibrates, and measures the overfit level on target train/test.
absl::StatusOr<PreparedTarget> PrepareTarget(const TripleStore& store,
                                             const SplitPlan& plan,
                                             const RunConfig& config);

// Train accuracy minus test accuracy under the run seed.
absl::StatusOr<double> MeasureOverfit(const TargetOracle& oracle,
                                      const SplitPlan& plan,
                                      const RunConfig& config,
                                      double* train_accuracy = nullptr,
                                      double* test_accuracy = nullptr);

struct EvaluationSet {
  std::vector<Triple> members;
  std::vector<Triple> non_members;

  std::vector<MembershipQuery> Queries() const;
  std::vector<int> Truth() const;
};

// Both sides down-sampled to the smaller size under `seed`.
EvaluationSet BalancedEvaluationSet(std::span<const Triple> members,
                                    std::span<const Triple> non_members,
                                    uint64_t seed);

// The adversary's own data for the transfer attack.
struct ShadowData {
  std::span<const Triple> train;
  std::span<const Triple> test;
  VocabSizes vocab;
  // Already trained shadow; when null one is trained on `train`.
  const TargetOracle* trained = nullptr;
};

struct AttackRun {
  std::vector<AttackDecision> decisions;
  std::vector<int> truth;
  AttackMetrics metrics;
  // Transfer attack only.
  double shadow_attack_accuracy = 0.0;
};

// Runs config.attack against `target` on `eval`. The transfer attack trains
// a shadow on `shadow` with config.ShadowTrainConfig().
absl::StatusOr<AttackRun> RunAttack(const TargetOracle& target,
                                    const EvaluationSet& eval,
                                    const ShadowData* shadow,
                                    const RunConfig& config);

// Fills the report fields shared by every run.
AttackReport MakeReport(const RunConfig& config, const AttackRun& run,
                        double overfit_level);

// Writes `<output_dir>/<fingerprint>_decisions.csv` and `_report.csv`, both or
// neither, and sets report->decisions_path.
absl::Status WriteRunOutputs(const RunConfig& config, const AttackRun& run,
                             AttackReport* report);

// Split, target training, calibration, attack, metrics. With an output
// directory, the decisions CSV and a one-row report CSV are written there
// once everything else succeeded.
absl::StatusOr<AttackReport> RunExperiment(const TripleStore& store,
                                           const RunConfig& config);

}  // namespace kgmia

#endif  // KGMIA_EXPERIMENT_H_
