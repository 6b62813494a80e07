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

#ifndef KGMIA_ATTACKS_H_
#define KGMIA_ATTACKS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "kgmia/attack_classifier.h"
#include "kgmia/oracle.h"
#include "kgmia/rng.h"
#include "kgmia/triple_store.h"

// Membership inference attacks. Everything here sees the target only through
// TargetOracle.

namespace kgmia {

struct MembershipQuery {
  Triple triple;
  // Ground-truth class for the correctness attack. Evaluation candidates are
  // all true facts.
  Label true_label = Label::kCorrect;
};

struct AttackDecision {
  Triple triple;
  int predicted_member = 0;
  // Classifier probability (TA), per-triple loss (PLA) or the correctness
  // bit (PCA).
  double evidence = 0.0;
};

enum class AttackKind : uint8_t { kTransfer = 0, kPredictionLoss = 1,
                                  kPredictionCorrectness = 2 };
std::string_view AttackKindName(AttackKind kind);  // "TA", "PLA", "PCA"
absl::StatusOr<AttackKind> ParseAttackKind(std::string_view name);

enum class LossMetric : uint8_t { kMargin = 0, kLogistic = 1 };
std::string_view LossMetricName(LossMetric metric);
absl::StatusOr<LossMetric> ParseLossMetric(std::string_view name);

std::vector<MembershipQuery> AsQueries(std::span<const Triple> triples);

// Worker threads for inference. Results do not depend on it.
struct InferenceOptions {
  uint32_t jobs = 1;
};

// Shadow-train scores labeled 1 and shadow-test scores labeled 0, the larger
// side down-sampled to the smaller one under `seed`. Members come first.
absl::StatusOr<std::vector<LabeledScore>> BuildTransferAttackSet(
    const TargetOracle& shadow_oracle, std::span<const Triple> shadow_train,
    std::span<const Triple> shadow_test, uint64_t seed);

absl::StatusOr<std::vector<AttackDecision>> TransferInfer(
    const AttackClassifier& classifier, const TargetOracle& target,
    std::span<const MembershipQuery> candidates,
    const InferenceOptions& options = {});

struct PlaOptions {
  LossMetric metric = LossMetric::kLogistic;
  double margin = 4.0;
  // Corruptions averaged per candidate under the margin metric.
  uint32_t corruptions = 1;
  uint32_t jobs = 1;
};

// Loss of every candidate, then member iff loss <= mean loss. Corruptions
// come from `rng`; one seed per candidate is drawn up front so the result
// does not depend on `jobs`.
absl::StatusOr<std::vector<AttackDecision>> PredictionLossInfer(
    const TargetOracle& target, std::span<const MembershipQuery> candidates,
    const PlaOptions& options, Rng& rng);

// The threshold rule on precomputed losses. `losses` and `triples` must have
// equal, non-zero length.
absl::StatusOr<std::vector<AttackDecision>> DecideByMeanLoss(
    std::span<const double> losses, std::span<const Triple> triples);

// Member iff the oracle's label matches the candidate's true label. Needs a
// calibrated oracle.
absl::StatusOr<std::vector<AttackDecision>> PredictionCorrectnessInfer(
    const TargetOracle& target, std::span<const MembershipQuery> candidates,
    const InferenceOptions& options = {});

// CSV with header head,relation,tail,evidence,predicted_member,member.
absl::StatusOr<std::string> FormatDecisionsCsv(
    std::span<const AttackDecision> decisions, std::span<const int> members);
absl::Status WriteDecisionsCsv(std::span<const AttackDecision> decisions,
                               std::span<const int> members,
                               const std::string& path);

}  // namespace kgmia

#endif  // KGMIA_ATTACKS_H_
