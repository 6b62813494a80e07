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

#ifndef KGMIA_ORACLE_H_
#define KGMIA_ORACLE_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "kgmia/rng.h"
#include "kgmia/triple_store.h"

namespace kgmia {

class KgeModel;

enum class Label : uint8_t { kCorrect = 0, kCorrupted = 1 };

enum class ThresholdMode : uint8_t { kPerRelation = 0, kGlobal = 1 };

std::string_view ThresholdModeName(ThresholdMode mode);
absl::StatusOr<ThresholdMode> ParseThresholdMode(std::string_view name);

struct ThresholdChoice {
  double threshold = 0.0;
  // Balanced accuracy: mean of the true-positive and true-negative rates.
  double accuracy = 0.0;
};

// Picks the threshold maximizing balanced accuracy of the rule
// "correct iff score <= threshold". Candidates are the midpoints between
// consecutive distinct scores plus the largest score; ties go to the smallest
// candidate. Both spans must be non-empty.
ThresholdChoice ChooseThreshold(std::span<const double> positive_scores,
                                std::span<const double> negative_scores);

struct RelationThreshold {
  double threshold = 0.0;
  double accuracy = 0.0;
};

struct ClassifierCalibration {
  ThresholdMode mode = ThresholdMode::kPerRelation;
  double global_threshold = 0.0;
  double global_accuracy = 0.0;
  std::map<RelationId, RelationThreshold> per_relation;

  // Relations missing from the calibration use the global threshold.
  double ThresholdFor(RelationId relation) const;
};

// TSV: a "global<TAB>threshold<TAB>accuracy<TAB>mode" header row followed by
// "relation-id<TAB>threshold<TAB>accuracy" rows in id order.
std::string FormatCalibration(const ClassifierCalibration& calibration);
absl::StatusOr<ClassifierCalibration> ParseCalibration(std::string_view text);
absl::Status SaveCalibration(const ClassifierCalibration& calibration,
                             const std::string& path);
absl::StatusOr<ClassifierCalibration> LoadCalibration(const std::string& path);

// Whatever produces plausibility scores behind the oracle boundary.
class ScoreSource {
 public:
  virtual ~ScoreSource() = default;
  virtual VocabSizes vocab_sizes() const = 0;
  // Only called with in-range ids.
  virtual double Score(const Triple& triple) const = 0;
};

// Black-box access to a frozen target: plausibility scores and, once
// calibrated, hard correct/corrupted labels. Nothing else crosses this
// boundary. Queries are thread-safe; each one bumps its counter once.
class TargetOracle {
 public:
  explicit TargetOracle(std::shared_ptr<const ScoreSource> source);
  static TargetOracle FromModel(std::shared_ptr<const KgeModel> model);
  static TargetOracle FromModel(KgeModel model);

  TargetOracle(TargetOracle&&) = default;
  TargetOracle& operator=(TargetOracle&&) = default;

  // The public size of the entity and relation id spaces.
  VocabSizes vocab_sizes() const { return vocab_; }

  absl::StatusOr<double> QueryScore(const Triple& triple) const;
  absl::StatusOr<Label> QueryLabel(const Triple& triple) const;

  // Owner-side threshold fitting. Each validation positive is paired with one
  // unfiltered entity corruption drawn from `rng`; thresholds are chosen per
  // relation (mode kPerRelation) and over the pooled set. Owner-side scoring
  // is not counted as queries.
  absl::StatusOr<ClassifierCalibration> Calibrate(
      std::span<const Triple> validation_positives, Rng& rng,
      ThresholdMode mode = ThresholdMode::kPerRelation);
  void SetCalibration(ClassifierCalibration calibration);
  bool calibrated() const { return calibration_.has_value(); }
  const std::optional<ClassifierCalibration>& calibration() const {
    return calibration_;
  }

  // Owner-side balanced triple-classification accuracy on positives, each
  // paired with one corruption from `rng`.
  absl::StatusOr<double> ClassificationAccuracy(
      std::span<const Triple> positives, Rng& rng) const;

  uint64_t score_queries() const { return counters_->score.load(); }
  uint64_t label_queries() const { return counters_->label.load(); }
  uint64_t invalid_queries() const { return counters_->invalid.load(); }
  void ResetCounters();

  // Hard cap on score + label queries; unset means unlimited.
  void set_query_budget(std::optional<uint64_t> budget) { budget_ = budget; }

 private:
  struct Counters {
    std::atomic<uint64_t> score{0};
    std::atomic<uint64_t> label{0};
    std::atomic<uint64_t> invalid{0};
  };

  bool InRange(const Triple& t) const {
    return t.head < vocab_.num_entities && t.tail < vocab_.num_entities &&
           t.relation < vocab_.num_relations;
  }
  absl::Status Admit(const Triple& t) const;
  Label LabelOf(const Triple& t) const;

  std::shared_ptr<const ScoreSource> source_;
  VocabSizes vocab_;
  std::optional<ClassifierCalibration> calibration_;
  std::optional<uint64_t> budget_;
  std::unique_ptr<Counters> counters_;
};

// Train accuracy minus test accuracy of the calibrated oracle's triple
// classifier, each on positives plus one corruption apiece.
absl::StatusOr<double> OverfitLevel(const TargetOracle& oracle,
                                    std::span<const Triple> train_positives,
                                    std::span<const Triple> test_positives,
                                    Rng& rng);

}  // namespace kgmia

#endif  // KGMIA_ORACLE_H_
