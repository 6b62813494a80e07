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

#include "kgmia/oracle.h"

#include "kgmia/strings.h"
#include "kgmia/corruption.h"
#include "kgmia/kge_model.h"
#include "kgmia/status_macros.h"

namespace kgmia {
namespace {

class ModelScoreSource : public ScoreSource {
 public:
  explicit ModelScoreSource(std::shared_ptr<const KgeModel> model)
      : model_(std::move(model)) {}
  VocabSizes vocab_sizes() const override { return model_->vocab_sizes(); }
  double Score(const Triple& triple) const override {
    return model_->ScoreUnchecked(triple);
  }

 private:
  std::shared_ptr<const KgeModel> model_;
};

}  // namespace

TargetOracle::TargetOracle(std::shared_ptr<const ScoreSource> source)
    : source_(std::move(source)),
      vocab_(source_->vocab_sizes()),
      counters_(std::make_unique<Counters>()) {}

TargetOracle TargetOracle::FromModel(std::shared_ptr<const KgeModel> model) {
  return TargetOracle(std::make_shared<ModelScoreSource>(std::move(model)));
}

TargetOracle TargetOracle::FromModel(KgeModel model) {
  return FromModel(std::make_shared<const KgeModel>(std::move(model)));
}

absl::Status TargetOracle::Admit(const Triple& t) const {
  if (!InRange(t)) {
    counters_->invalid.fetch_add(1, std::memory_order_relaxed);
    return absl::OutOfRangeError(StrCat(
        "query (", t.head, ",", t.relation, ",", t.tail,
        ") outside the oracle's id space"));
  }
  if (budget_.has_value() &&
      counters_->score.load(std::memory_order_relaxed) +
              counters_->label.load(std::memory_order_relaxed) >=
          *budget_) {
    return absl::ResourceExhaustedError(
        StrCat("query budget of ", *budget_, " exhausted"));
  }
  return absl::OkStatus();
}

absl::StatusOr<double> TargetOracle::QueryScore(const Triple& triple) const {
  KGMIA_RETURN_IF_ERROR(Admit(triple));
  counters_->score.fetch_add(1, std::memory_order_relaxed);
  return source_->Score(triple);
}

Label TargetOracle::LabelOf(const Triple& t) const {
  return source_->Score(t) <= calibration_->ThresholdFor(t.relation)
             ? Label::kCorrect
             : Label::kCorrupted;
}

absl::StatusOr<Label> TargetOracle::QueryLabel(const Triple& triple) const {
  if (!calibrated()) {
    return absl::FailedPreconditionError("oracle has not been calibrated");
  }
  KGMIA_RETURN_IF_ERROR(Admit(triple));
  counters_->label.fetch_add(1, std::memory_order_relaxed);
  return LabelOf(triple);
}

void TargetOracle::ResetCounters() {
  counters_->score = 0;
  counters_->label = 0;
  counters_->invalid = 0;
}

void TargetOracle::SetCalibration(ClassifierCalibration calibration) {
  calibration_ = std::move(calibration);
}

absl::StatusOr<ClassifierCalibration> TargetOracle::Calibrate(
    std::span<const Triple> validation_positives, Rng& rng,
    ThresholdMode mode) {
  if (validation_positives.empty()) {
    return absl::InvalidArgumentError("calibration needs validation positives");
  }
  std::map<RelationId, std::pair<std::vector<double>, std::vector<double>>>
      by_relation;
  std::vector<double> all_pos, all_neg;
  for (const Triple& pos : validation_positives) {
    if (!InRange(pos)) {
      return absl::OutOfRangeError("validation triple outside id space");
    }
    KGMIA_ASSIGN_OR_RETURN(CorruptionSample neg, CorruptTriple(pos, vocab_, rng));
    const double sp = source_->Score(pos);
    const double sn = source_->Score(neg.corrupted);
    all_pos.push_back(sp);
    all_neg.push_back(sn);
    if (mode == ThresholdMode::kPerRelation) {
      auto& bucket = by_relation[pos.relation];
      bucket.first.push_back(sp);
      bucket.second.push_back(sn);
    }
  }
  ClassifierCalibration cal;
  cal.mode = mode;
  const ThresholdChoice global = ChooseThreshold(all_pos, all_neg);
  cal.global_threshold = global.threshold;
  cal.global_accuracy = global.accuracy;
  for (const auto& [relation, scores] : by_relation) {
    const ThresholdChoice c = ChooseThreshold(scores.first, scores.second);
    cal.per_relation[relation] = {c.threshold, c.accuracy};
  }
  calibration_ = cal;
  return cal;
}

absl::StatusOr<double> TargetOracle::ClassificationAccuracy(
    std::span<const Triple> positives, Rng& rng) const {
  if (!calibrated()) {
    return absl::FailedPreconditionError("oracle has not been calibrated");
  }
  if (positives.empty()) {
    return absl::InvalidArgumentError("accuracy needs at least one positive");
  }
  size_t true_pos = 0, true_neg = 0;
  for (const Triple& pos : positives) {
    if (!InRange(pos)) return absl::OutOfRangeError("triple outside id space");
    KGMIA_ASSIGN_OR_RETURN(CorruptionSample neg, CorruptTriple(pos, vocab_, rng));
    if (LabelOf(pos) == Label::kCorrect) ++true_pos;
    if (LabelOf(neg.corrupted) == Label::kCorrupted) ++true_neg;
  }
  const double n = static_cast<double>(positives.size());
  return 0.5 * (true_pos / n + true_neg / n);
}

absl::StatusOr<double> OverfitLevel(const TargetOracle& oracle,
                                    std::span<const Triple> train_positives,
                                    std::span<const Triple> test_positives,
                                    Rng& rng) {
  if (train_positives.empty() || test_positives.empty()) {
    return absl::InvalidArgumentError("overfit level needs non-empty sets");
  }
  KGMIA_ASSIGN_OR_RETURN(double train_acc,
                         oracle.ClassificationAccuracy(train_positives, rng));
  KGMIA_ASSIGN_OR_RETURN(double test_acc,
                         oracle.ClassificationAccuracy(test_positives, rng));
  return train_acc - test_acc;
}

}  // namespace kgmia
