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

#include "kgmia/kge_model.h"

#include <complex>
#include <vector>

#include <gtest/gtest.h>
#include "kgmia/rng.h"
#include "test_util.h"

namespace kgmia {
namespace {

using ::kgmia::testing::StatusIs;

void SetRow(EmbeddingTable& table, uint32_t i, std::vector<float> values) {
  auto row = table.row(i);
  ASSERT_EQ(row.size(), values.size());
  std::copy(values.begin(), values.end(), row.begin());
}

void FillRandom(EmbeddingTable& table, Rng& rng) {
  for (float& v : table.data()) v = static_cast<float>(rng.UniformDouble(-1, 1));
}

TEST(KgeModelTest, TransEExactTranslationScoresZero) {
  ASSERT_OK_AND_ASSIGN(KgeModel m,
                       KgeModel::Create(ModelKind::kTransE, NormKind::kL1, 2, {2, 1}));
  SetRow(m.entities(), 0, {1, 2});
  SetRow(m.entities(), 1, {1.5, 1});
  SetRow(m.relations(), 0, {0.5, -1});
  ASSERT_OK_AND_ASSIGN(double s, m.Score({0, 0, 1}));
  EXPECT_EQ(s, 0.0);
  ASSERT_OK_AND_ASSIGN(double back, m.Score({1, 0, 0}));
  EXPECT_DOUBLE_EQ(back, 1.0 + 2.0);  // |1.5+0.5-1| + |1-1-2|
}

TEST(KgeModelTest, TransEL2Norm) {
  ASSERT_OK_AND_ASSIGN(KgeModel m,
                       KgeModel::Create(ModelKind::kTransE, NormKind::kL2, 2, {2, 1}));
  SetRow(m.entities(), 0, {0, 0});
  SetRow(m.entities(), 1, {0, 0});
  SetRow(m.relations(), 0, {3, 4});
  ASSERT_OK_AND_ASSIGN(double s, m.Score({0, 0, 1}));
  EXPECT_DOUBLE_EQ(s, 5.0);
}

TEST(KgeModelTest, DistMultHandProduct) {
  ASSERT_OK_AND_ASSIGN(
      KgeModel m, KgeModel::Create(ModelKind::kDistMult, NormKind::kL1, 2, {2, 1}));
  SetRow(m.entities(), 0, {1, 0});
  SetRow(m.entities(), 1, {1, 0});
  SetRow(m.relations(), 0, {1, 1});
  ASSERT_OK_AND_ASSIGN(double s, m.Score({0, 0, 1}));
  EXPECT_EQ(s, -1.0);
}

TEST(KgeModelTest, TransHProjectsOntoHyperplane) {
  ASSERT_OK_AND_ASSIGN(KgeModel m,
                       KgeModel::Create(ModelKind::kTransH, NormKind::kL1, 2, {2, 1}));
  // Normal along the first axis: only second coordinates survive projection.
  SetRow(m.normals(), 0, {1, 0});
  SetRow(m.entities(), 0, {5, 1});
  SetRow(m.entities(), 1, {-3, 2});
  SetRow(m.relations(), 0, {0, 1});
  ASSERT_OK_AND_ASSIGN(double s, m.Score({0, 0, 1}));
  EXPECT_DOUBLE_EQ(s, 0.0);
}

TEST(KgeModelTest, ComplExWithZeroImaginaryEqualsDistMult) {
  const uint32_t dim = 16;
  const VocabSizes vocab{50, 5};
  ASSERT_OK_AND_ASSIGN(KgeModel complex,
                       KgeModel::Create(ModelKind::kComplEx, NormKind::kL1, dim, vocab));
  ASSERT_OK_AND_ASSIGN(KgeModel distmult,
                       KgeModel::Create(ModelKind::kDistMult, NormKind::kL1, dim, vocab));
  Rng rng(17);
  FillRandom(distmult.entities(), rng);
  FillRandom(distmult.relations(), rng);
  complex.entities() = distmult.entities();
  complex.relations() = distmult.relations();
  for (int i = 0; i < 1000; ++i) {
    const Triple t{static_cast<uint32_t>(rng.UniformInt(50)),
                   static_cast<uint32_t>(rng.UniformInt(5)),
                   static_cast<uint32_t>(rng.UniformInt(50))};
    ASSERT_OK_AND_ASSIGN(double a, complex.Score(t));
    ASSERT_OK_AND_ASSIGN(double b, distmult.Score(t));
    EXPECT_NEAR(a, b, 1e-9);
  }
}

TEST(KgeModelTest, ComplExMatchesComplexArithmetic) {
  const uint32_t dim = 8;
  ASSERT_OK_AND_ASSIGN(KgeModel m,
                       KgeModel::Create(ModelKind::kComplEx, NormKind::kL1, dim, {10, 3}));
  Rng rng(3);
  for (EmbeddingTable* t : m.Tables()) FillRandom(*t, rng);
  for (int n = 0; n < 200; ++n) {
    const Triple t{static_cast<uint32_t>(rng.UniformInt(10)),
                   static_cast<uint32_t>(rng.UniformInt(3)),
                   static_cast<uint32_t>(rng.UniformInt(10))};
    std::complex<double> acc = 0;
    for (uint32_t i = 0; i < dim; ++i) {
      const std::complex<double> h(m.entities().row(t.head)[i],
                                   m.entities_im().row(t.head)[i]);
      const std::complex<double> r(m.relations().row(t.relation)[i],
                                   m.relations_im().row(t.relation)[i]);
      const std::complex<double> tl(m.entities().row(t.tail)[i],
                                    m.entities_im().row(t.tail)[i]);
      acc += h * r * std::conj(tl);
    }
    ASSERT_OK_AND_ASSIGN(double s, m.Score(t));
    EXPECT_NEAR(s, -acc.real(), 1e-9);
  }
}

TEST(KgeModelTest, OutOfRangeIdsRejected) {
  ASSERT_OK_AND_ASSIGN(KgeModel m,
                       KgeModel::Create(ModelKind::kTransE, NormKind::kL1, 4, {3, 2}));
  EXPECT_THAT(m.Score({3, 0, 0}), StatusIs(absl::StatusCode::kOutOfRange));
  EXPECT_THAT(m.Score({0, 2, 0}), StatusIs(absl::StatusCode::kOutOfRange));
  EXPECT_OK(m.Score({2, 1, 2}));
}

TEST(KgeModelTest, TablesPerKind) {
  for (ModelKind kind : kAllModelKinds) {
    ASSERT_OK_AND_ASSIGN(KgeModel m, KgeModel::Create(kind, NormKind::kL1, 3, {4, 2}));
    const size_t expected = kind == ModelKind::kComplEx  ? 4
                            : kind == ModelKind::kTransH ? 3
                                                         : 2;
    EXPECT_EQ(m.Tables().size(), expected) << ModelKindName(kind);
  }
  EXPECT_THAT(KgeModel::Create(ModelKind::kTransE, NormKind::kL1, 0, {4, 2}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(KgeModelTest, NamesRoundTrip) {
  for (ModelKind kind : kAllModelKinds) {
    ASSERT_OK_AND_ASSIGN(ModelKind back, ParseModelKind(ModelKindName(kind)));
    EXPECT_EQ(back, kind);
  }
  EXPECT_EQ(*ParseModelKind("transe"), ModelKind::kTransE);
  EXPECT_THAT(ParseModelKind("rotate"), StatusIs(absl::StatusCode::kInvalidArgument));
}

}  // namespace
}  // namespace kgmia
