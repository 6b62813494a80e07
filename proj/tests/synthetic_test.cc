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

#include "kgmia/synthetic.h"

#include <algorithm>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include "test_util.h"

namespace kgmia {
namespace {

using ::kgmia::testing::StatusIs;

TEST(SyntheticKgTest, RequestedShapeWithoutLoopsOrDuplicates) {
  SyntheticConfig c;
  c.entities = 1000;
  c.relations = 10;
  c.triples = 20000;
  c.seed = 7;
  ASSERT_OK_AND_ASSIGN(TripleStore kg, GenerateSyntheticKg(c));
  EXPECT_EQ(kg.size(), 20000u);
  EXPECT_EQ(kg.num_entities(), 1000u);
  EXPECT_EQ(kg.num_relations(), 10u);
  EXPECT_EQ(kg.entity_vocab()[0], "e0");
  EXPECT_EQ(kg.relation_vocab()[9], "r9");
  EXPECT_EQ(kg.duplicates_dropped(), 0u);
  for (const Triple& t : kg.triples()) ASSERT_NE(t.head, t.tail);
}

TEST(SyntheticKgTest, SeedDeterminesTheGraph) {
  SyntheticConfig c;
  c.triples = 3000;
  c.seed = 1;
  ASSERT_OK_AND_ASSIGN(TripleStore a, GenerateSyntheticKg(c));
  ASSERT_OK_AND_ASSIGN(TripleStore b, GenerateSyntheticKg(c));
  c.seed = 2;
  ASSERT_OK_AND_ASSIGN(TripleStore d, GenerateSyntheticKg(c));
  EXPECT_EQ(a.triples(), b.triples());
  EXPECT_NE(a.triples(), d.triples());
}

std::vector<size_t> SortedDegrees(const TripleStore& kg) {
  std::vector<size_t> deg(kg.num_entities());
  for (const Triple& t : kg.triples()) {
    ++deg[t.head];
    ++deg[t.tail];
  }
  std::sort(deg.rbegin(), deg.rend());
  return deg;
}

TEST(SyntheticKgTest, ExponentControlsDegreeSkew) {
  SyntheticConfig c;
  c.triples = 20000;
  c.seed = 3;
  ASSERT_OK_AND_ASSIGN(TripleStore skewed, GenerateSyntheticKg(c));
  c.zipf_exponent = 0.0;
  ASSERT_OK_AND_ASSIGN(TripleStore flat, GenerateSyntheticKg(c));
  const auto s = SortedDegrees(skewed), f = SortedDegrees(flat);
  // Mean degree is 40 in both.
  EXPECT_GT(s.front(), 5 * s[500]);
  EXPECT_LT(f.front(), 2 * f[500]);
}

TEST(SyntheticKgTest, RejectsImpossibleConfigs) {
  SyntheticConfig c;
  c.entities = 1;
  EXPECT_THAT(GenerateSyntheticKg(c), StatusIs(absl::StatusCode::kInvalidArgument));
  c = {};
  c.relations = 0;
  EXPECT_THAT(GenerateSyntheticKg(c), StatusIs(absl::StatusCode::kInvalidArgument));
  c = {};
  c.entities = 10;
  c.relations = 1;
  c.triples = 46;  // over half of the 90 possible triples
  EXPECT_THAT(GenerateSyntheticKg(c), StatusIs(absl::StatusCode::kInvalidArgument));
  c.triples = 45;
  EXPECT_OK(GenerateSyntheticKg(c));
}

}  // namespace
}  // namespace kgmia
