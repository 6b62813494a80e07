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

#include "kgmia/loss.h"

#include <cmath>

#include "kgmia/status_macros.h"

namespace kgmia {

double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

PairLoss MarginPairLoss(double positive_score, double negative_score,
                        double margin) {
  const double v = margin + positive_score - negative_score;
  if (v <= 0) return {};
  return {v, 1.0, -1.0};
}

PairLoss LogisticPairLoss(double positive_score, double negative_score) {
  return {Softplus(positive_score) + Softplus(-negative_score),
          Sigmoid(positive_score), -Sigmoid(-negative_score)};
}

PairLoss PairLossOf(LossKind loss, double positive_score, double negative_score,
                    double margin) {
  return loss == LossKind::kMargin
             ? MarginPairLoss(positive_score, negative_score, margin)
             : LogisticPairLoss(positive_score, negative_score);
}

absl::StatusOr<double> LossMargin(const KgeModel& model, const Triple& positive,
                                  const Triple& negative, double margin) {
  if (!(margin > 0)) return absl::InvalidArgumentError("margin must be > 0");
  KGMIA_ASSIGN_OR_RETURN(double sp, model.Score(positive));
  KGMIA_ASSIGN_OR_RETURN(double sn, model.Score(negative));
  return MarginPairLoss(sp, sn, margin).value;
}

absl::StatusOr<double> LossLogistic(const KgeModel& model,
                                    const Triple& positive,
                                    const Triple& negative) {
  KGMIA_ASSIGN_OR_RETURN(double sp, model.Score(positive));
  KGMIA_ASSIGN_OR_RETURN(double sn, model.Score(negative));
  return LogisticPairLoss(sp, sn).value;
}

}  // namespace kgmia
