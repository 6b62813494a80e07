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

#include <numeric>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include "kgmia/corruption.h"
#include "kgmia/trainer.h"
#include "kgmia/rng.h"
#include "test_kg.h"
#include "test_util.h"

namespace kgmia {
namespace {

using ::kgmia::testing::OracleOf;
using ::kgmia::testing::RandomTriples;
using ::kgmia::testing::StatusIs;

uint64_t Sum(const std::vector<uint64_t>& v) {
  return std::accumulate(v.begin(), v.end(), uint64_t{0});
}

TEST(HistogramTest, DisjointRangesDoNotOverlap) {
  const std::vector<double> m = {0.0, 0.5, 1.0, 1.5};
  const std::vector<double> n = {8.0, 9.0, 10.0};
  ASSERT_OK_AND_ASSIGN(ScoreHistogram h, HistogramOfScores(m, n, 10));
  EXPECT_EQ(h.OverlappingBins(), 0u);
  ASSERT_EQ(h.edges.size(), 11u);
  EXPECT_EQ(h.edges.front(), 0.0);
  EXPECT_EQ(h.edges.back(), 10.0);
  EXPECT_EQ(Sum(h.member_counts), 4u);
  EXPECT_EQ(Sum(h.non_member_counts), 3u);
  // Maximum lands in the last, closed bin.
  EXPECT_EQ(h.non_member_counts.back(), 2u);  // 9 and 10
  EXPECT_EQ(h.member_counts[0], 2u);
}

TEST(HistogramTest, IdenticalSetsGiveIdenticalCounts) {
  Rng rng(1);
  std::vector<double> s(500);
  for (double& x : s) x = rng.UniformDouble(-2, 3);
  ASSERT_OK_AND_ASSIGN(ScoreHistogram h, HistogramOfScores(s, s, 25));
  EXPECT_EQ(h.member_counts, h.non_member_counts);
  ASSERT_OK_AND_ASSIGN(ScoreHistogram again, HistogramOfScores(s, s, 25));
  EXPECT_EQ(again.member_counts, h.member_counts);
}

TEST(HistogramTest, ConstantScoresFitOneBin) {
  const std::vector<double> s = {2.0, 2.0};
  ASSERT_OK_AND_ASSIGN(ScoreHistogram h, HistogramOfScores(s, s, 4));
  EXPECT_EQ(Sum(h.member_counts), 2u);
  EXPECT_EQ(h.OverlappingBins(), 1u);
}

TEST(HistogramTest, Errors) {
  const std::vector<double> s = {1.0};
  EXPECT_THAT(HistogramOfScores({}, s, 3), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(HistogramOfScores(s, {}, 3), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(HistogramOfScores(s, s, 0), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(HistogramTest, CsvLayout) {
  const std::vector<double> m = {0.0, 1.0};
  const std::vector<double> n = {2.0};
  ASSERT_OK_AND_ASSIGN(ScoreHistogram h, HistogramOfScores(m, n, 2));
  EXPECT_EQ(FormatHistogramCsv(h),
            "bin_lo,bin_hi,member_count,nonmember_count\n"
            "0,1,1,0\n"
            "1,2,1,1\n");
}

TEST(HistogramTest, OracleScoresAreCountedOnce) {
  const VocabSizes vocab{40, 2};
  const auto members = RandomTriples(vocab, 30, 1);
  const auto non = RandomTriples(vocab, 20, 2);
  TargetOracle o = OracleOf(vocab, kgmia::testing::HashUnit);
  ASSERT_OK_AND_ASSIGN(ScoreHistogram h, ScoreHistogramOf(o, members, non, 5));
  EXPECT_EQ(Sum(h.member_counts), 30u);
  EXPECT_EQ(Sum(h.non_member_counts), 20u);
  EXPECT_EQ(o.score_queries(), 50u);
}

TEST(HistogramTest, MarginModelMassIsNonNegative) {
  const VocabSizes vocab{300, 5};
  const auto triples = RandomTriples(vocab, 3000, 3);
  TrainConfig c = DefaultTrainConfig(ModelKind::kTransH);
  c.epochs = 100;
  c.dim = 20;
  ASSERT_OK_AND_ASSIGN(TrainResult r, Train(triples, vocab, c));
  TargetOracle o = TargetOracle::FromModel(std::move(r.model));
  Rng rng(4);
  std::vector<Triple> corrupted;
  for (const Triple& t : triples) {
    ASSERT_OK_AND_ASSIGN(CorruptionSample s, CorruptTriple(t, vocab, rng));
    corrupted.push_back(s.corrupted);
  }
  ASSERT_OK_AND_ASSIGN(ScoreHistogram h, ScoreHistogramOf(o, triples, corrupted, 20));
  EXPECT_GE(h.edges.front(), 0.0);
}

}  // namespace
}  // namespace kgmia
