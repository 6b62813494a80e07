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

#include "kgmia/attacks.h"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"
#include "kgmia/corruption.h"
#include "kgmia/parallel.h"
#include "kgmia/split.h"
#include "kgmia/status_macros.h"
#include "kgmia/strings.h"

namespace kgmia {
namespace {

double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

}  // namespace

std::string_view AttackKindName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kTransfer:
      return "TA";
    case AttackKind::kPredictionLoss:
      return "PLA";
    case AttackKind::kPredictionCorrectness:
      return "PCA";
  }
  return "?";
}

absl::StatusOr<AttackKind> ParseAttackKind(std::string_view name) {
  const std::string lower = AsciiToLower(name);
  if (lower == "ta") return AttackKind::kTransfer;
  if (lower == "pla") return AttackKind::kPredictionLoss;
  if (lower == "pca") return AttackKind::kPredictionCorrectness;
  return absl::InvalidArgumentError(
      StrCat("unknown attack '", name, "' (expected ta, pla or pca)"));
}

std::string_view LossMetricName(LossMetric metric) {
  return metric == LossMetric::kMargin ? "margin" : "logistic";
}

absl::StatusOr<LossMetric> ParseLossMetric(std::string_view name) {
  const std::string lower = AsciiToLower(name);
  if (lower == "margin") return LossMetric::kMargin;
  if (lower == "logistic") return LossMetric::kLogistic;
  return absl::InvalidArgumentError(
      StrCat("unknown loss metric '", name, "' (expected margin or logistic)"));
}

std::vector<MembershipQuery> AsQueries(std::span<const Triple> triples) {
  std::vector<MembershipQuery> out;
  out.reserve(triples.size());
  for (const Triple& t : triples) out.push_back({t, Label::kCorrect});
  return out;
}

absl::StatusOr<std::vector<LabeledScore>> BuildTransferAttackSet(
    const TargetOracle& shadow_oracle, std::span<const Triple> shadow_train,
    std::span<const Triple> shadow_test, uint64_t seed) {
  if (shadow_train.empty() || shadow_test.empty()) {
    return absl::InvalidArgumentError(
        "attack set needs non-empty shadow train and test triples");
  }
  const size_t n = std::min(shadow_train.size(), shadow_test.size());
  const std::vector<Triple> members =
      DownSample(shadow_train, n, DeriveSeed(seed, "attack-set-members"));
  const std::vector<Triple> non_members =
      DownSample(shadow_test, n, DeriveSeed(seed, "attack-set-nonmembers"));
  std::vector<LabeledScore> out;
  out.reserve(2 * n);
  for (const Triple& t : members) {
    KGMIA_ASSIGN_OR_RETURN(double s, shadow_oracle.QueryScore(t));
    out.push_back({s, 1});
  }
  for (const Triple& t : non_members) {
    KGMIA_ASSIGN_OR_RETURN(double s, shadow_oracle.QueryScore(t));
    out.push_back({s, 0});
  }
  return out;
}

absl::StatusOr<std::vector<AttackDecision>> TransferInfer(
    const AttackClassifier& classifier, const TargetOracle& target,
    std::span<const MembershipQuery> candidates,
    const InferenceOptions& options) {
  std::vector<AttackDecision> out(candidates.size());
  KGMIA_RETURN_IF_ERROR(ParallelFor(
      candidates.size(), options.jobs, [&](size_t i) -> absl::Status {
        const Triple& t = candidates[i].triple;
        KGMIA_ASSIGN_OR_RETURN(double s, target.QueryScore(t));
        const double p = classifier.Probability(s);
        out[i] = {t, p >= 0.5 ? 1 : 0, p};
        return absl::OkStatus();
      }));
  return out;
}

absl::StatusOr<std::vector<AttackDecision>> DecideByMeanLoss(
    std::span<const double> losses, std::span<const Triple> triples) {
  if (losses.empty()) {
    return absl::InvalidArgumentError("no candidates to decide on");
  }
  if (losses.size() != triples.size()) {
    return absl::InvalidArgumentError("losses and triples differ in length");
  }
  double sum = 0.0;
  for (double l : losses) sum += l;
  const double delta = sum / static_cast<double>(losses.size());
  std::vector<AttackDecision> out(losses.size());
  for (size_t i = 0; i < losses.size(); ++i) {
    out[i] = {triples[i], losses[i] <= delta ? 1 : 0, losses[i]};
  }
  return out;
}

absl::StatusOr<std::vector<AttackDecision>> PredictionLossInfer(
    const TargetOracle& target, std::span<const MembershipQuery> candidates,
    const PlaOptions& options, Rng& rng) {
  if (candidates.empty()) {
    return absl::InvalidArgumentError("prediction-loss attack needs candidates");
  }
  if (options.metric == LossMetric::kMargin &&
      (options.corruptions == 0 || !(options.margin > 0))) {
    return absl::InvalidArgumentError(
        "margin metric needs a positive margin and at least one corruption");
  }
  std::vector<uint64_t> seeds;
  if (options.metric == LossMetric::kMargin) {
    seeds.resize(candidates.size());
    for (uint64_t& s : seeds) s = rng.Next();
  }
  const VocabSizes vocab = target.vocab_sizes();
  std::vector<double> losses(candidates.size());
  std::vector<Triple> triples(candidates.size());
  KGMIA_RETURN_IF_ERROR(ParallelFor(
      candidates.size(), options.jobs, [&](size_t i) -> absl::Status {
        const Triple& t = candidates[i].triple;
        triples[i] = t;
        KGMIA_ASSIGN_OR_RETURN(double s, target.QueryScore(t));
        if (options.metric == LossMetric::kLogistic) {
          losses[i] = Softplus(s);
          return absl::OkStatus();
        }
        Rng local(seeds[i]);
        double total = 0.0;
        for (uint32_t k = 0; k < options.corruptions; ++k) {
          KGMIA_ASSIGN_OR_RETURN(CorruptionSample c,
                                 CorruptTriple(t, vocab, local));
          KGMIA_ASSIGN_OR_RETURN(double sc, target.QueryScore(c.corrupted));
          total += std::max(options.margin + s - sc, 0.0);
        }
        losses[i] = total / options.corruptions;
        return absl::OkStatus();
      }));
  return DecideByMeanLoss(losses, triples);
}

absl::StatusOr<std::vector<AttackDecision>> PredictionCorrectnessInfer(
    const TargetOracle& target, std::span<const MembershipQuery> candidates,
    const InferenceOptions& options) {
  if (!target.calibrated()) {
    return absl::FailedPreconditionError(
        "prediction-correctness attack needs a calibrated oracle");
  }
  std::vector<AttackDecision> out(candidates.size());
  KGMIA_RETURN_IF_ERROR(ParallelFor(
      candidates.size(), options.jobs, [&](size_t i) -> absl::Status {
        const MembershipQuery& q = candidates[i];
        KGMIA_ASSIGN_OR_RETURN(Label label, target.QueryLabel(q.triple));
        const int hit = label == q.true_label ? 1 : 0;
        out[i] = {q.triple, hit, static_cast<double>(hit)};
        return absl::OkStatus();
      }));
  return out;
}

absl::StatusOr<std::string> FormatDecisionsCsv(
    std::span<const AttackDecision> decisions, std::span<const int> members) {
  if (decisions.size() != members.size()) {
    return absl::InvalidArgumentError(
        "decisions and membership bits differ in length");
  }
  std::string out = "head,relation,tail,evidence,predicted_member,member\n";
  for (size_t i = 0; i < decisions.size(); ++i) {
    const AttackDecision& d = decisions[i];
    fmt::format_to(std::back_inserter(out), "{},{},{},{:.17g},{},{}\n",
                   d.triple.head, d.triple.relation, d.triple.tail, d.evidence,
                   d.predicted_member, members[i]);
  }
  return out;
}

absl::Status WriteDecisionsCsv(std::span<const AttackDecision> decisions,
                               std::span<const int> members,
                               const std::string& path) {
  KGMIA_ASSIGN_OR_RETURN(std::string csv, FormatDecisionsCsv(decisions, members));
  return WriteStringToFile(path, csv);
}

}  // namespace kgmia
