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

#include "kgmia/metrics.h"

#include "kgmia/status_macros.h"
#include "kgmia/strings.h"

namespace kgmia {

absl::StatusOr<AttackMetrics> MetricsFromConfusion(const Confusion& c) {
  if (c.total() == 0) {
    return absl::InvalidArgumentError("cannot score an empty decision list");
  }
  AttackMetrics m;
  m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
  if (c.tp + c.fp > 0) {
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  if (c.tp + c.fn > 0) {
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  }
  if (m.precision + m.recall > 0) {
    m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

absl::StatusOr<Confusion> ConfusionOf(std::span<const AttackDecision> decisions,
                                      std::span<const int> members) {
  if (decisions.size() != members.size()) {
    return absl::InvalidArgumentError(
        "decisions and membership bits differ in length");
  }
  Confusion c;
  for (size_t i = 0; i < decisions.size(); ++i) {
    const int p = decisions[i].predicted_member;
    const int m = members[i];
    if ((p != 0 && p != 1) || (m != 0 && m != 1)) {
      return absl::InvalidArgumentError(
          StrCat("row ", i, ": membership bits must be 0 or 1"));
    }
    const bool predicted = p == 1;
    const bool actual = m == 1;
    if (predicted && actual) ++c.tp;
    if (predicted && !actual) ++c.fp;
    if (!predicted && actual) ++c.fn;
    if (!predicted && !actual) ++c.tn;
  }
  return c;
}

absl::StatusOr<AttackMetrics> ComputeMetrics(
    std::span<const AttackDecision> decisions, std::span<const int> members) {
  KGMIA_ASSIGN_OR_RETURN(Confusion c, ConfusionOf(decisions, members));
  return MetricsFromConfusion(c);
}

}  // namespace kgmia
