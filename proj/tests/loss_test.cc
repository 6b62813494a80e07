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

#include <gtest/gtest.h>
#include "test_util.h"

namespace kgmia {
namespace {

using ::kgmia::testing::StatusIs;

TEST(PairLossTest, MarginExamples) {
  EXPECT_EQ(MarginPairLoss(0, 2, 1).value, 0.0);
  EXPECT_EQ(MarginPairLoss(2, 0, 1).value, 3.0);
  const PairLoss l = MarginPairLoss(2, 0, 1);
  EXPECT_EQ(l.d_positive, 1.0);
  EXPECT_EQ(l.d_negative, -1.0);
  // Exactly at the hinge the zero subgradient is used.
  EXPECT_EQ(MarginPairLoss(0, 1, 1).d_positive, 0.0);
}

TEST(PairLossTest, LogisticExamples) {
  EXPECT_NEAR(LogisticPairLoss(0, 0).value, 2 * std::log(2.0), 1e-12);
  const PairLoss saturated = LogisticPairLoss(-100, 100);
  EXPECT_TRUE(std::isfinite(saturated.value));
  EXPECT_NEAR(saturated.value, 0.0, 1e-40);
  const PairLoss big = LogisticPairLoss(800, -800);
  EXPECT_TRUE(std::isfinite(big.value));
  EXPECT_NEAR(big.value, 1600.0, 1e-9);
}

TEST(PairLossTest, SoftplusAndSigmoidStable) {
  EXPECT_NEAR(Softplus(0), std::log(2.0), 1e-15);
  EXPECT_EQ(Softplus(1000), 1000.0);
  EXPECT_GT(Softplus(-1000), -1e-300);
  EXPECT_NEAR(Sigmoid(0), 0.5, 1e-15);
  EXPECT_EQ(Sigmoid(-1000), 0.0);
  EXPECT_EQ(Sigmoid(1000), 1.0);
  for (double x = -35; x <= 35; x += 0.5) {
    EXPECT_NEAR(Softplus(x), std::log1p(std::exp(x)), 1e-12 * (1 + std::abs(x)));
  }
}

TEST(ModelLossTest, UsesModelScores) {
  ASSERT_OK_AND_ASSIGN(KgeModel m,
                       KgeModel::Create(ModelKind::kTransE, NormKind::kL1, 1, {3, 1}));
  m.entities().row(0)[0] = 0;
  m.entities().row(1)[0] = 1;
  m.entities().row(2)[0] = 3;
  m.relations().row(0)[0] = 1;
  // score(0,0,1) = 0, score(2,0,1) = 3
  ASSERT_OK_AND_ASSIGN(double margin, LossMargin(m, {0, 0, 1}, {2, 0, 1}, 1));
  EXPECT_EQ(margin, 0.0);
  ASSERT_OK_AND_ASSIGN(double reversed, LossMargin(m, {2, 0, 1}, {0, 0, 1}, 1));
  EXPECT_EQ(reversed, 4.0);
  ASSERT_OK_AND_ASSIGN(double logistic, LossLogistic(m, {0, 0, 1}, {2, 0, 1}));
  EXPECT_NEAR(logistic, std::log(2.0) + std::log1p(std::exp(-3.0)), 1e-12);
  EXPECT_THAT(LossMargin(m, {0, 0, 1}, {2, 0, 1}, 0),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(LossLogistic(m, {0, 0, 5}, {2, 0, 1}),
              StatusIs(absl::StatusCode::kOutOfRange));
}

}  // namespace
}  // namespace kgmia
