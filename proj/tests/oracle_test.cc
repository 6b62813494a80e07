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

#include "kgmia/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <thread>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include "kgmia/corruption.h"
#include "kgmia/kge_model.h"
#include "kgmia/parallel.h"
#include "kgmia/rng.h"
#include "kgmia/trainer.h"
#include "test_kg.h"
#include "test_util.h"

namespace kgmia {
namespace {

using ::kgmia::testing::HashUnit;
using ::kgmia::testing::OracleOf;
using ::kgmia::testing::RandomTriples;
using ::kgmia::testing::ScopedTempDir;
using ::kgmia::testing::StatusIs;

KgeModel TrainedToyModel(ModelKind kind, VocabSizes vocab,
                         std::span<const Triple> triples, uint64_t seed) {
  TrainConfig c = DefaultTrainConfig(kind);
  c.dim = 16;
  c.epochs = 20;
  c.seed = seed;
  auto r = Train(triples, vocab, c);
  EXPECT_TRUE(r.ok()) << r.status();
  return std::move(r).value().model;
}

// Exhaustive threshold search: every midpoint between consecutive distinct
// pooled scores plus the maximum, scored by balanced accuracy; smallest
// threshold among the best.
ThresholdChoice BruteForceThreshold(const std::vector<double>& pos,
                                    const std::vector<double>& neg) {
  std::vector<double> pooled = pos;
  pooled.insert(pooled.end(), neg.begin(), neg.end());
  std::sort(pooled.begin(), pooled.end());
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());
  std::vector<double> candidates;
  for (size_t i = 0; i + 1 < pooled.size(); ++i) {
    candidates.push_back(pooled[i] + (pooled[i + 1] - pooled[i]) / 2);
  }
  candidates.push_back(pooled.back());
  ThresholdChoice best{0.0, -1.0};
  for (double th : candidates) {
    double tp = 0, tn = 0;
    for (double s : pos) tp += s <= th;
    for (double s : neg) tn += s > th;
    const double acc = 0.5 * (tp / pos.size() + tn / neg.size());
    if (acc > best.accuracy ||
        (acc == best.accuracy && th < best.threshold)) {
      best = {th, acc};
    }
  }
  return best;
}

TEST(ChooseThresholdTest, SeparableScoresPickMidpoint) {
  const std::vector<double> pos = {1, 1, 1};
  const std::vector<double> neg = {3, 3, 3};
  ThresholdChoice c = ChooseThreshold(pos, neg);
  EXPECT_DOUBLE_EQ(c.threshold, 2.0);
  EXPECT_DOUBLE_EQ(c.accuracy, 1.0);
}

TEST(ChooseThresholdTest, IdenticalScoresGiveHalf) {
  const std::vector<double> pos = {2, 2, 2, 2};
  const std::vector<double> neg = {2, 2};
  ThresholdChoice c = ChooseThreshold(pos, neg);
  EXPECT_DOUBLE_EQ(c.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(c.threshold, 2.0);
}

TEST(ChooseThresholdTest, TieGoesToSmallestThreshold) {
  // Thresholds 1.5 and 3.5 both reach 0.75.
  const std::vector<double> pos = {1, 3};
  const std::vector<double> neg = {2, 4};
  ThresholdChoice c = ChooseThreshold(pos, neg);
  EXPECT_DOUBLE_EQ(c.accuracy, 0.75);
  EXPECT_DOUBLE_EQ(c.threshold, 1.5);
}

TEST(ChooseThresholdTest, MatchesExhaustiveSweepOnRandomSets) {
  Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> pos(1 + rng.UniformInt(12)), neg(1 + rng.UniformInt(12));
    // Small integer grid forces ties; half the trials are continuous.
    const bool grid = trial % 2 == 0;
    auto draw = [&](double shift) {
      return grid ? static_cast<double>(rng.UniformInt(6)) + shift
                  : rng.UniformDouble(-3, 3) + shift;
    };
    for (double& s : pos) s = draw(0.0);
    for (double& s : neg) s = draw(grid ? 1.0 : 0.7);
    const ThresholdChoice want = BruteForceThreshold(pos, neg);
    const ThresholdChoice got = ChooseThreshold(pos, neg);
    ASSERT_DOUBLE_EQ(got.accuracy, want.accuracy) << "trial " << trial;
    ASSERT_DOUBLE_EQ(got.threshold, want.threshold) << "trial " << trial;
  }
}

TEST(OracleTest, ScoreMatchesModelAndIsStable) {
  const VocabSizes vocab{30, 3};
  const std::vector<Triple> triples = RandomTriples(vocab, 120, 1);
  auto model = std::make_shared<const KgeModel>(
      TrainedToyModel(ModelKind::kTransE, vocab, triples, 1));
  TargetOracle oracle = TargetOracle::FromModel(model);
  EXPECT_EQ(oracle.vocab_sizes().num_entities, 30u);
  for (const Triple& t : triples) {
    ASSERT_OK_AND_ASSIGN(double a, oracle.QueryScore(t));
    ASSERT_OK_AND_ASSIGN(double b, oracle.QueryScore(t));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, model->ScoreUnchecked(t));
  }
}

TEST(OracleTest, CountsEveryQueryOnce) {
  TargetOracle oracle = OracleOf({10, 2}, HashUnit);
  const std::vector<Triple> triples = RandomTriples({10, 2}, 100, 3);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_OK(oracle.QueryScore(triples[i % triples.size()]));
  }
  EXPECT_EQ(oracle.score_queries(), 1000u);
  EXPECT_EQ(oracle.label_queries(), 0u);

  // Owner-side calibration is not a query.
  Rng rng(1);
  ASSERT_OK(oracle.Calibrate(triples, rng));
  EXPECT_EQ(oracle.score_queries(), 1000u);
  for (int i = 0; i < 250; ++i) ASSERT_OK(oracle.QueryLabel(triples[i % 100]));
  EXPECT_EQ(oracle.label_queries(), 250u);
  oracle.ResetCounters();
  EXPECT_EQ(oracle.score_queries(), 0u);
  EXPECT_EQ(oracle.label_queries(), 0u);
}

TEST(OracleTest, ConcurrentQueriesAreCountedExactly) {
  TargetOracle oracle = OracleOf({50, 5}, HashUnit);
  const std::vector<Triple> triples = RandomTriples({50, 5}, 4000, 5);
  ASSERT_OK(ParallelFor(triples.size(), 4, [&](size_t i) {
    return oracle.QueryScore(triples[i]).status();
  }));
  EXPECT_EQ(oracle.score_queries(), 4000u);
}

TEST(OracleTest, InvalidIdsAreCountedSeparately) {
  TargetOracle oracle = OracleOf({10, 2}, HashUnit);
  EXPECT_THAT(oracle.QueryScore({10, 0, 1}),
              StatusIs(absl::StatusCode::kOutOfRange));
  EXPECT_THAT(oracle.QueryScore({1, 2, 1}),
              StatusIs(absl::StatusCode::kOutOfRange));
  EXPECT_THAT(oracle.QueryScore({1, 0, 99}),
              StatusIs(absl::StatusCode::kOutOfRange));
  EXPECT_EQ(oracle.invalid_queries(), 3u);
  EXPECT_EQ(oracle.score_queries(), 0u);
}

TEST(OracleTest, LabelRequiresCalibration) {
  TargetOracle oracle = OracleOf({10, 2}, HashUnit);
  EXPECT_FALSE(oracle.calibrated());
  EXPECT_THAT(oracle.QueryLabel({0, 0, 1}),
              StatusIs(absl::StatusCode::kFailedPrecondition));
  Rng rng(1);
  EXPECT_THAT(oracle.ClassificationAccuracy(RandomTriples({10, 2}, 5, 1), rng),
              StatusIs(absl::StatusCode::kFailedPrecondition));
}

TEST(OracleTest, CalibrateRejectsEmptyAndOutOfRange) {
  TargetOracle oracle = OracleOf({10, 2}, HashUnit);
  Rng rng(1);
  EXPECT_THAT(oracle.Calibrate({}, rng),
              StatusIs(absl::StatusCode::kInvalidArgument));
  const std::vector<Triple> bad = {{0, 5, 1}};
  EXPECT_THAT(oracle.Calibrate(bad, rng),
              StatusIs(absl::StatusCode::kOutOfRange));
}

TEST(OracleTest, QueryBudgetIsAHardCap) {
  TargetOracle oracle = OracleOf({10, 2}, HashUnit);
  oracle.set_query_budget(5);
  for (int i = 0; i < 5; ++i) ASSERT_OK(oracle.QueryScore({0, 0, 1}));
  EXPECT_THAT(oracle.QueryScore({0, 0, 1}),
              StatusIs(absl::StatusCode::kResourceExhausted, "budget"));
  EXPECT_EQ(oracle.score_queries(), 5u);
  oracle.set_query_budget(std::nullopt);
  EXPECT_OK(oracle.QueryScore({0, 0, 1}));
}

TEST(OracleTest, SeparableCalibrationPicksMidpoint) {
  // Positives score 1, everything else 3.
  const std::vector<Triple> positives = {{0, 0, 1}, {1, 0, 2}, {2, 1, 3}};
  const TripleSet pos_set(positives.begin(), positives.end());
  TargetOracle oracle = OracleOf({20, 2}, [&](const Triple& t) {
    return pos_set.contains(t) ? 1.0 : 3.0;
  });
  Rng rng(4);
  ASSERT_OK_AND_ASSIGN(ClassifierCalibration cal, oracle.Calibrate(positives, rng));
  EXPECT_DOUBLE_EQ(cal.global_threshold, 2.0);
  EXPECT_DOUBLE_EQ(cal.global_accuracy, 1.0);
  ASSERT_EQ(cal.per_relation.size(), 2u);
  EXPECT_DOUBLE_EQ(cal.per_relation.at(0).threshold, 2.0);
  EXPECT_DOUBLE_EQ(cal.per_relation.at(1).accuracy, 1.0);
  ASSERT_OK_AND_ASSIGN(Label l, oracle.QueryLabel({0, 0, 1}));
  EXPECT_EQ(l, Label::kCorrect);
  ASSERT_OK_AND_ASSIGN(l, oracle.QueryLabel({0, 0, 7}));
  EXPECT_EQ(l, Label::kCorrupted);
}

TEST(OracleTest, IdenticalScoresCalibrateToHalf) {
  TargetOracle oracle = OracleOf({20, 2}, [](const Triple&) { return 0.25; });
  Rng rng(4);
  ASSERT_OK_AND_ASSIGN(ClassifierCalibration cal,
                       oracle.Calibrate(RandomTriples({20, 2}, 40, 2), rng));
  EXPECT_DOUBLE_EQ(cal.global_accuracy, 0.5);
  for (const auto& [r, t] : cal.per_relation) EXPECT_DOUBLE_EQ(t.accuracy, 0.5);
}

TEST(OracleTest, CalibrationMatchesExhaustiveSweepOnTrainedModel) {
  const VocabSizes vocab{40, 4};
  const std::vector<Triple> triples = RandomTriples(vocab, 300, 8);
  for (ModelKind kind : {ModelKind::kTransE, ModelKind::kDistMult}) {
    auto model = std::make_shared<const KgeModel>(
        TrainedToyModel(kind, vocab, triples, 2));
    TargetOracle oracle = TargetOracle::FromModel(model);
    const std::span<const Triple> valid(triples.data(), 120);
    Rng rng(17);
    ASSERT_OK_AND_ASSIGN(ClassifierCalibration cal, oracle.Calibrate(valid, rng));

    // Replay the same corruption draws against the model directly.
    Rng replay(17);
    std::map<RelationId, std::pair<std::vector<double>, std::vector<double>>> by;
    std::vector<double> all_pos, all_neg;
    for (const Triple& t : valid) {
      ASSERT_OK_AND_ASSIGN(CorruptionSample c, CorruptTriple(t, vocab, replay));
      const double sp = model->ScoreUnchecked(t);
      const double sn = model->ScoreUnchecked(c.corrupted);
      by[t.relation].first.push_back(sp);
      by[t.relation].second.push_back(sn);
      all_pos.push_back(sp);
      all_neg.push_back(sn);
    }
    const ThresholdChoice g = BruteForceThreshold(all_pos, all_neg);
    EXPECT_DOUBLE_EQ(cal.global_threshold, g.threshold);
    EXPECT_DOUBLE_EQ(cal.global_accuracy, g.accuracy);
    ASSERT_EQ(cal.per_relation.size(), by.size());
    for (const auto& [r, scores] : by) {
      const ThresholdChoice want = BruteForceThreshold(scores.first, scores.second);
      EXPECT_DOUBLE_EQ(cal.per_relation.at(r).threshold, want.threshold);
      EXPECT_DOUBLE_EQ(cal.per_relation.at(r).accuracy, want.accuracy);
    }
  }
}

TEST(OracleTest, LabelIsThresholdedScore) {
  const VocabSizes vocab{60, 6};
  const std::vector<Triple> triples = RandomTriples(vocab, 400, 21);
  TargetOracle oracle = TargetOracle::FromModel(
      TrainedToyModel(ModelKind::kComplEx, vocab, triples, 3));
  Rng rng(5);
  // Calibrate on relations 0..4 only so relation 5 exercises the fallback.
  std::vector<Triple> valid;
  for (const Triple& t : triples) {
    if (t.relation != 5) valid.push_back(t);
  }
  ASSERT_OK_AND_ASSIGN(ClassifierCalibration cal, oracle.Calibrate(valid, rng));
  ASSERT_FALSE(cal.per_relation.contains(5));
  EXPECT_EQ(cal.ThresholdFor(5), cal.global_threshold);

  Rng draw(6);
  int fallback = 0;
  for (int i = 0; i < 10000; ++i) {
    Triple t{static_cast<EntityId>(draw.UniformInt(60)),
             static_cast<RelationId>(draw.UniformInt(6)),
             static_cast<EntityId>(draw.UniformInt(60))};
    ASSERT_OK_AND_ASSIGN(double s, oracle.QueryScore(t));
    ASSERT_OK_AND_ASSIGN(Label l, oracle.QueryLabel(t));
    const double th = t.relation == 5 ? cal.global_threshold
                                      : cal.per_relation.at(t.relation).threshold;
    fallback += t.relation == 5;
    EXPECT_EQ(l == Label::kCorrect, th - s >= 0) << i;
  }
  EXPECT_GT(fallback, 1000);
}

TEST(OracleTest, GlobalModeIgnoresPerRelationThresholds) {
  TargetOracle oracle = OracleOf({20, 3}, HashUnit);
  Rng rng(1);
  ASSERT_OK_AND_ASSIGN(
      ClassifierCalibration cal,
      oracle.Calibrate(RandomTriples({20, 3}, 60, 9), rng, ThresholdMode::kGlobal));
  EXPECT_EQ(cal.mode, ThresholdMode::kGlobal);
  EXPECT_TRUE(cal.per_relation.empty());
  cal.per_relation[0] = {-100.0, 1.0};
  EXPECT_EQ(cal.ThresholdFor(0), cal.global_threshold);
}

TEST(OverfitLevelTest, EverythingCorrectGivesZero) {
  const VocabSizes vocab{50, 2};
  const std::vector<Triple> triples = RandomTriples(vocab, 200, 1);
  TargetOracle oracle = OracleOf(vocab, [](const Triple&) { return 0.0; });
  Rng rng(2);
  ASSERT_OK(oracle.Calibrate(triples, rng));
  ASSERT_OK_AND_ASSIGN(Label l, oracle.QueryLabel({3, 1, 4}));
  EXPECT_EQ(l, Label::kCorrect);
  ASSERT_OK_AND_ASSIGN(
      double level, OverfitLevel(oracle, std::span(triples).first(100),
                                 std::span(triples).subspan(100), rng));
  EXPECT_DOUBLE_EQ(level, 0.0);
}

TEST(OverfitLevelTest, MemorizedTrainSetGivesAboutHalf) {
  // Train triples score 0; everything else scores uniformly in [1, 2).
  const VocabSizes vocab{500, 4};
  const std::vector<Triple> triples = RandomTriples(vocab, 4000, 2);
  const std::span<const Triple> train = std::span(triples).first(2000);
  const std::span<const Triple> test = std::span(triples).subspan(2000);
  const TripleSet memorized(train.begin(), train.end());
  TargetOracle oracle = OracleOf(vocab, [&](const Triple& t) {
    return memorized.contains(t) ? 0.0 : 1.0 + HashUnit(t);
  });
  Rng rng(3);
  ASSERT_OK(oracle.Calibrate(train.first(200), rng));
  ASSERT_OK_AND_ASSIGN(double level, OverfitLevel(oracle, train, test, rng));
  // Train accuracy is 1; test positives all look corrupted.
  EXPECT_NEAR(level, 0.5, 0.01);
}

TEST(OverfitLevelTest, UntrainedModelIsNearZero) {
  const VocabSizes vocab{1000, 10};
  const std::vector<Triple> triples = RandomTriples(vocab, 6000, 4);
  const std::span<const Triple> all(triples);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    TrainConfig c = DefaultTrainConfig(ModelKind::kTransE);
    c.seed = seed;
    ASSERT_OK_AND_ASSIGN(KgeModel m, InitializeModel(c, vocab));
    TargetOracle oracle = TargetOracle::FromModel(std::move(m));
    Rng rng(DeriveSeed(seed, "overfit"));
    ASSERT_OK(oracle.Calibrate(all.first(1000), rng));
    ASSERT_OK_AND_ASSIGN(
        double level,
        OverfitLevel(oracle, all.subspan(1000, 2500), all.subspan(3500), rng));
    EXPECT_GE(level, -0.05) << "seed " << seed;
    EXPECT_LE(level, 0.05) << "seed " << seed;
  }
}

TEST(OverfitLevelTest, RejectsEmptySets) {
  TargetOracle oracle = OracleOf({10, 1}, HashUnit);
  const std::vector<Triple> some = RandomTriples({10, 1}, 10, 1);
  Rng rng(1);
  ASSERT_OK(oracle.Calibrate(some, rng));
  EXPECT_THAT(OverfitLevel(oracle, {}, some, rng),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(OverfitLevel(oracle, some, {}, rng),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(CalibrationFileTest, RoundTrip) {
  ClassifierCalibration cal;
  cal.mode = ThresholdMode::kPerRelation;
  cal.global_threshold = 1.0 / 3.0;
  cal.global_accuracy = 0.8125;
  cal.per_relation[0] = {-2.5e-7, 0.9};
  cal.per_relation[7] = {std::nextafter(4.0, 5.0), 0.55};
  ScopedTempDir dir;
  ASSERT_OK(SaveCalibration(cal, dir.File("cal.tsv")));
  ASSERT_OK_AND_ASSIGN(ClassifierCalibration back,
                       LoadCalibration(dir.File("cal.tsv")));
  EXPECT_EQ(back.mode, cal.mode);
  EXPECT_EQ(back.global_threshold, cal.global_threshold);
  EXPECT_EQ(back.global_accuracy, cal.global_accuracy);
  ASSERT_EQ(back.per_relation.size(), 2u);
  EXPECT_EQ(back.per_relation.at(7).threshold, cal.per_relation.at(7).threshold);
  EXPECT_EQ(back.per_relation.at(0).accuracy, 0.9);
  EXPECT_EQ(FormatCalibration(back), FormatCalibration(cal));
}

TEST(CalibrationFileTest, Layout) {
  ClassifierCalibration cal;
  cal.global_threshold = 2;
  cal.global_accuracy = 1;
  cal.per_relation[3] = {1.5, 0.75};
  EXPECT_EQ(FormatCalibration(cal), "global\t2\t1\tper_relation\n3\t1.5\t0.75\n");
}

TEST(CalibrationFileTest, MalformedInput) {
  EXPECT_THAT(ParseCalibration(""), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParseCalibration("3\t1\t1\n"),
              StatusIs(absl::StatusCode::kInvalidArgument, "line 1"));
  EXPECT_THAT(ParseCalibration("global\t1\t1\tglobal\nx\t1\t1\n"),
              StatusIs(absl::StatusCode::kInvalidArgument, "line 2"));
  EXPECT_THAT(ParseCalibration("global\t1\t1\tsideways\n"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(LoadCalibration("/nonexistent/cal.tsv"),
              StatusIs(absl::StatusCode::kNotFound, "/nonexistent/cal.tsv"));
}

}  // namespace
}  // namespace kgmia
