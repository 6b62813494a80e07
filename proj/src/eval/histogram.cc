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

#include "kgmia/histogram.h"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"
#include "kgmia/status_macros.h"

namespace kgmia {

size_t ScoreHistogram::OverlappingBins() const {
  size_t n = 0;
  for (size_t i = 0; i < member_counts.size(); ++i) {
    n += member_counts[i] > 0 && non_member_counts[i] > 0;
  }
  return n;
}

absl::StatusOr<ScoreHistogram> HistogramOfScores(
    std::span<const double> members, std::span<const double> non_members,
    uint32_t bins) {
  if (members.empty() || non_members.empty()) {
    return absl::InvalidArgumentError("histogram needs non-empty score sets");
  }
  if (bins == 0) return absl::InvalidArgumentError("histogram needs bins > 0");
  double lo = members[0];
  double hi = members[0];
  for (auto set : {members, non_members}) {
    for (double s : set) {
      if (!std::isfinite(s)) {
        return absl::InvalidArgumentError("histogram got a non-finite score");
      }
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  ScoreHistogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / bins;
  for (uint32_t i = 0; i <= bins; ++i) h.edges[i] = lo + width * i;
  h.edges[bins] = hi;
  h.member_counts.assign(bins, 0);
  h.non_member_counts.assign(bins, 0);
  auto bin_of = [&](double s) -> size_t {
    if (width <= 0) return 0;
    const auto b = static_cast<size_t>((s - lo) / width);
    return std::min<size_t>(b, bins - 1);
  };
  for (double s : members) ++h.member_counts[bin_of(s)];
  for (double s : non_members) ++h.non_member_counts[bin_of(s)];
  return h;
}

absl::StatusOr<ScoreHistogram> ScoreHistogramOf(
    const TargetOracle& oracle, std::span<const Triple> members,
    std::span<const Triple> non_members, uint32_t bins) {
  std::vector<double> m, n;
  m.reserve(members.size());
  n.reserve(non_members.size());
  for (const Triple& t : members) {
    KGMIA_ASSIGN_OR_RETURN(double s, oracle.QueryScore(t));
    m.push_back(s);
  }
  for (const Triple& t : non_members) {
    KGMIA_ASSIGN_OR_RETURN(double s, oracle.QueryScore(t));
    n.push_back(s);
  }
  return HistogramOfScores(m, n, bins);
}

std::string FormatHistogramCsv(const ScoreHistogram& h) {
  std::string out = "bin_lo,bin_hi,member_count,nonmember_count\n";
  for (size_t i = 0; i < h.member_counts.size(); ++i) {
    fmt::format_to(std::back_inserter(out), "{:.17g},{:.17g},{},{}\n",
                   h.edges[i], h.edges[i + 1], h.member_counts[i],
                   h.non_member_counts[i]);
  }
  return out;
}

}  // namespace kgmia
