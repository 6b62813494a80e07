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

#ifndef KGMIA_LOSS_H_
#define KGMIA_LOSS_H_

#include <span>

#include "absl/status/statusor.h"
#include "kgmia/kge_kernels.h"
#include "kgmia/kge_model.h"

namespace kgmia {

// log(1 + exp(x)) without overflow: max(x, 0) + log1p(exp(-|x|)).
double Softplus(double x);
double Sigmoid(double x);

// Loss value and its partial derivatives w.r.t. the two scores.
struct PairLoss {
  double value = 0.0;
  double d_positive = 0.0;
  double d_negative = 0.0;
};

// max(margin + pos - neg, 0). At the hinge the subgradient 0 is used.
PairLoss MarginPairLoss(double positive_score, double negative_score,
                        double margin);
// softplus(pos) + softplus(-neg).
PairLoss LogisticPairLoss(double positive_score, double negative_score);

PairLoss PairLossOf(LossKind loss, double positive_score, double negative_score,
                    double margin);

absl::StatusOr<double> LossMargin(const KgeModel& model, const Triple& positive,
                                  const Triple& negative, double margin);
absl::StatusOr<double> LossLogistic(const KgeModel& model,
                                    const Triple& positive,
                                    const Triple& negative);

// Loss of a positive/negative pair and its gradient w.r.t. both triples' rows.
// Rows shared between the two triples must be summed by the caller.
template <typename T>
double AccumulatePairGradient(ModelKind kind, NormKind norm, LossKind loss,
                              double margin, const TripleRows<T>& positive,
                              const TripleRows<T>& negative,
                              const TripleGrads& positive_grads,
                              const TripleGrads& negative_grads,
                              std::span<double> scratch) {
  const double sp = ScoreRows(kind, norm, positive, scratch);
  const double sn = ScoreRows(kind, norm, negative, scratch);
  const PairLoss l = PairLossOf(loss, sp, sn, margin);
  if (l.d_positive != 0.0) {
    AccumulateScoreGradient(kind, norm, positive, l.d_positive, positive_grads,
                            scratch);
  }
  if (l.d_negative != 0.0) {
    AccumulateScoreGradient(kind, norm, negative, l.d_negative, negative_grads,
                            scratch);
  }
  return l.value;
}

}  // namespace kgmia

#endif  // KGMIA_LOSS_H_
