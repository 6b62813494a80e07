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

#ifndef KGMIA_HISTOGRAM_H_
#define KGMIA_HISTOGRAM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "kgmia/oracle.h"

namespace kgmia {

// Equal-width bins over [min, max] of the pooled scores; the last bin is
// closed on the right.
struct ScoreHistogram {
  std::vector<double> edges;  // bins + 1 entries
  std::vector<uint64_t> member_counts;
  std::vector<uint64_t> non_member_counts;

  // Bins holding scores from both sets.
  size_t OverlappingBins() const;
};

absl::StatusOr<ScoreHistogram> HistogramOfScores(std::span<const double> members,
                                                 std::span<const double> non_members,
                                                 uint32_t bins);

// Queries the oracle for every triple of both sets.
absl::StatusOr<ScoreHistogram> ScoreHistogramOf(const TargetOracle& oracle,
                                                std::span<const Triple> members,
                                                std::span<const Triple> non_members,
                                                uint32_t bins);

// bin_lo,bin_hi,member_count,nonmember_count
std::string FormatHistogramCsv(const ScoreHistogram& histogram);

}  // namespace kgmia

#endif  // KGMIA_HISTOGRAM_H_
