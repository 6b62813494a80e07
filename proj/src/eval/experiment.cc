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

#include "kgmia/experiment.h"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <utility>

#include "fmt/format.h"
#include "kgmia/attack_classifier.h"
#include "kgmia/shadow.h"
#include "kgmia/status_macros.h"
#include "kgmia/strings.h"
#include "kgmia/trainer.h"

namespace kgmia {

std::vector<Triple> CalibrationSample(std::span<const Triple> target_train,
                                      const RunConfig& config) {
  return SampleFraction(target_train, config.calibration_fraction,
                        DeriveSeed(config.seed, "calibration"));
}

absl::Status CalibrateTarget(TargetOracle& oracle,
                             std::span<const Triple> target_train,
                             const RunConfig& config) {
  const std::vector<Triple> sample = CalibrationSample(target_train, config);
  Rng rng(DeriveSeed(config.seed, "calibration-negatives"));
  KGMIA_ASSIGN_OR_RETURN(ClassifierCalibration calibration,
                         oracle.Calibrate(sample, rng, config.threshold_mode));
  oracle.SetCalibration(std::move(calibration));
  return absl::OkStatus();
}

absl::StatusOr<double> MeasureOverfit(const TargetOracle& oracle,
                                      const SplitPlan& plan,
                                      const RunConfig& config,
                                      double* train_accuracy,
                                      double* test_accuracy) {
  Rng rng(DeriveSeed(config.seed, "overfit"));
  KGMIA_ASSIGN_OR_RETURN(double train_acc,
                         oracle.ClassificationAccuracy(plan.target_train, rng));
  KGMIA_ASSIGN_OR_RETURN(double test_acc,
                         oracle.ClassificationAccuracy(plan.target_test, rng));
  if (train_accuracy != nullptr) *train_accuracy = train_acc;
  if (test_accuracy != nullptr) *test_accuracy = test_acc;
  return train_acc - test_acc;
}

absl::StatusOr<PreparedTarget> PrepareTarget(const TripleStore& store,
                                             const SplitPlan& plan,
                                             const RunConfig& config) {
  KGMIA_RETURN_IF_ERROR(config.Validate());
  const TrainConfig train_config = config.TargetTrainConfig();
  std::vector<Triple> training = plan.target_train;
  if (config.calibration_holdout) {
    const std::vector<Triple> sample =
        CalibrationSample(plan.target_train, config);
    const TripleSet held(sample.begin(), sample.end());
    std::erase_if(training, [&held](const Triple& t) { return held.contains(t); });
    if (training.empty()) {
      return absl::InvalidArgumentError(
          "calibration holdout leaves no training triples");
    }
  }
  TrainOptions options;
  options.known_triples = &store.membership_index();
  KGMIA_ASSIGN_OR_RETURN(
      TrainResult result,
      Train(training, store.vocab_sizes(), train_config, options));
  PreparedTarget prepared{train_config,
                          TargetOracle::FromModel(std::move(result.model)),
                          std::move(result.epoch_loss)};
  KGMIA_RETURN_IF_ERROR(
      CalibrateTarget(prepared.oracle, plan.target_train, config));
  KGMIA_ASSIGN_OR_RETURN(
      prepared.overfit_level,
      MeasureOverfit(prepared.oracle, plan, config, &prepared.train_accuracy,
                     &prepared.test_accuracy));
  return prepared;
}

std::vector<MembershipQuery> EvaluationSet::Queries() const {
  std::vector<MembershipQuery> out = AsQueries(members);
  const std::vector<MembershipQuery> rest = AsQueries(non_members);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<int> EvaluationSet::Truth() const {
  std::vector<int> out(members.size(), 1);
  out.resize(members.size() + non_members.size(), 0);
  return out;
}

EvaluationSet BalancedEvaluationSet(std::span<const Triple> members,
                                    std::span<const Triple> non_members,
                                    uint64_t seed) {
  const size_t n = std::min(members.size(), non_members.size());
  return {DownSample(members, n, DeriveSeed(seed, "eval-members")),
          DownSample(non_members, n, DeriveSeed(seed, "eval-nonmembers"))};
}

absl::StatusOr<AttackRun> RunAttack(const TargetOracle& target,
                                    const EvaluationSet& eval,
                                    const ShadowData* shadow,
                                    const RunConfig& config) {
  KGMIA_RETURN_IF_ERROR(config.Validate());
  if (eval.members.empty() || eval.non_members.empty()) {
    return absl::InvalidArgumentError(
        "evaluation needs both members and non-members");
  }
  const uint64_t seed = config.AttackSeed();
  const std::vector<MembershipQuery> queries = eval.Queries();
  AttackRun run;
  run.truth = eval.Truth();
  InferenceOptions inference;
  inference.jobs = config.jobs;
  switch (config.attack) {
    case AttackKind::kTransfer: {
      if (shadow == nullptr) {
        return absl::InvalidArgumentError("transfer attack needs shadow data");
      }
      std::optional<TargetOracle> own_shadow;
      if (shadow->trained == nullptr) {
        KGMIA_ASSIGN_OR_RETURN(
            own_shadow, TrainShadow(shadow->train, shadow->vocab,
                                    config.ShadowTrainConfig()));
      }
      const TargetOracle& shadow_oracle =
          own_shadow ? *own_shadow : *shadow->trained;
      KGMIA_ASSIGN_OR_RETURN(
          std::vector<LabeledScore> attack_set,
          BuildTransferAttackSet(shadow_oracle, shadow->train, shadow->test,
                                 DeriveSeed(seed, "attack-set")));
      ClassifierConfig classifier_config = config.classifier;
      classifier_config.seed = DeriveSeed(seed, "classifier");
      KGMIA_ASSIGN_OR_RETURN(
          AttackClassifier classifier,
          AttackClassifier::Fit(attack_set, classifier_config));
      run.shadow_attack_accuracy = classifier.Accuracy(attack_set);
      KGMIA_ASSIGN_OR_RETURN(
          run.decisions, TransferInfer(classifier, target, queries, inference));
      break;
    }
    case AttackKind::kPredictionLoss: {
      PlaOptions options;
      options.metric = config.loss_metric;
      options.margin = config.pla_margin;
      options.corruptions = config.pla_corruptions;
      options.jobs = config.jobs;
      Rng rng(DeriveSeed(seed, "pla"));
      KGMIA_ASSIGN_OR_RETURN(
          run.decisions, PredictionLossInfer(target, queries, options, rng));
      break;
    }
    case AttackKind::kPredictionCorrectness: {
      KGMIA_ASSIGN_OR_RETURN(
          run.decisions, PredictionCorrectnessInfer(target, queries, inference));
      break;
    }
  }
  KGMIA_ASSIGN_OR_RETURN(run.metrics, ComputeMetrics(run.decisions, run.truth));
  return run;
}

AttackReport MakeReport(const RunConfig& config, const AttackRun& run,
                        double overfit_level) {
  AttackReport r;
  r.attack = config.attack;
  r.model = std::string(ModelKindName(config.train.model));
  r.dataset = config.dataset_name;
  r.accuracy = run.metrics.accuracy;
  r.f1 = run.metrics.f1;
  r.precision = run.metrics.precision;
  r.recall = run.metrics.recall;
  r.overfit_level = overfit_level;
  r.fingerprint = config.Fingerprint();
  r.regime = std::string(RegimeName(config.regime));
  r.loss_metric = config.attack == AttackKind::kPredictionLoss
                      ? std::string(LossMetricName(config.loss_metric))
                      : "";
  r.seed = config.seed;
  r.evaluated = run.decisions.size();
  return r;
}

namespace {

// Stages every file next to its target and renames only once all writes
// succeeded.
absl::Status WriteFilesTogether(
    const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::string> staged;
  auto cleanup = [&staged] {
    std::error_code ec;
    for (const std::string& p : staged) std::filesystem::remove(p, ec);
  };
  for (const auto& [path, data] : files) {
    staged.push_back(StrCat(path, ".partial"));
    if (absl::Status s = WriteStringToFile(staged.back(), data); !s.ok()) {
      cleanup();
      return s;
    }
  }
  for (size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    std::filesystem::rename(staged[i], files[i].first, ec);
    if (ec) {
      cleanup();
      return absl::PermissionDeniedError(
          StrCat("cannot move ", staged[i], " to ", files[i].first, ": ",
                 ec.message()));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status WriteRunOutputs(const RunConfig& config, const AttackRun& run,
                             AttackReport* report) {
  const std::string stem = StrCat(config.output_dir, "/", report->fingerprint);
  report->decisions_path = StrCat(stem, "_decisions.csv");
  KGMIA_ASSIGN_OR_RETURN(std::string decisions,
                         FormatDecisionsCsv(run.decisions, run.truth));
  return WriteFilesTogether(
      {{report->decisions_path, decisions},
       {StrCat(stem, "_report.csv"), FormatReportCsv({report, 1})}});
}

absl::StatusOr<AttackReport> RunExperiment(const TripleStore& store,
                                           const RunConfig& config) {
  KGMIA_RETURN_IF_ERROR(config.Validate());
  KGMIA_ASSIGN_OR_RETURN(SplitPlan plan, MakeSplit(store, config.seed));
  KGMIA_ASSIGN_OR_RETURN(PreparedTarget target,
                         PrepareTarget(store, plan, config));
  const EvaluationSet eval =
      BalancedEvaluationSet(plan.target_train, plan.target_test,
                            DeriveSeed(config.AttackSeed(), "evaluation"));
  const ShadowData shadow{plan.shadow_train, plan.shadow_test,
                          store.vocab_sizes()};
  KGMIA_ASSIGN_OR_RETURN(AttackRun run,
                         RunAttack(target.oracle, eval, &shadow, config));
  AttackReport report = MakeReport(config, run, target.overfit_level);
  if (!config.output_dir.empty()) {
    KGMIA_RETURN_IF_ERROR(WriteRunOutputs(config, run, &report));
  }
  return report;
}

}  // namespace kgmia
