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

#ifndef KGMIA_METRICS_H_
#define KGMIA_METRICS_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "kgmia/attacks.h"

namespace kgmia {

struct Confusion {
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t fn = 0;
  uint64_t tn = 0;

  uint64_t total() const { return tp + fp + fn + tn; }
};

struct AttackMetrics {
  double accuracy = 0.0;
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Precision is 0 without positive predictions, recall is 0 without actual
// members, F1 is 0 when precision + recall is 0. Empty matrices are rejected.
absl::StatusOr<AttackMetrics> MetricsFromConfusion(const Confusion& c);

absl::StatusOr<Confusion> ConfusionOf(std::span<const AttackDecision> decisions,
                                      std::span<const int> members);

absl::StatusOr<AttackMetrics> ComputeMetrics(
    std::span<const AttackDecision> decisions, std::span<const int> members);

}  // namespace kgmia

#endif  // KGMIA_METRICS_H_
