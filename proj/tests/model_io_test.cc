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

#include "kgmia/model_io.h"

#include <string>

#include <gtest/gtest.h>
#include "kgmia/rng.h"
#include "kgmia/triple_store.h"
#include "test_util.h"

namespace kgmia {
namespace {

using ::kgmia::testing::ScopedTempDir;
using ::kgmia::testing::StatusIs;

KgeModel RandomModel(ModelKind kind, uint64_t seed) {
  KgeModel m = *KgeModel::Create(kind, NormKind::kL2, 5, {7, 3});
  Rng rng(seed);
  for (EmbeddingTable* t : m.Tables()) {
    for (float& v : t->data()) v = static_cast<float>(rng.UniformDouble(-2, 2));
  }
  return m;
}

TEST(ModelIoTest, RoundTripIsBitIdentical) {
  ScopedTempDir dir;
  for (ModelKind kind : kAllModelKinds) {
    const KgeModel m = RandomModel(kind, 3);
    const std::string path = dir.File(std::string(ModelKindName(kind)) + ".kgem");
    ASSERT_OK(SaveModel(m, path));
    ASSERT_OK_AND_ASSIGN(KgeModel back, LoadModel(path));
    EXPECT_TRUE(back == m) << ModelKindName(kind);
    EXPECT_EQ(SerializeModel(back), SerializeModel(m));
  }
}

TEST(ModelIoTest, HeaderLayout) {
  const std::string bytes = SerializeModel(RandomModel(ModelKind::kComplEx, 1));
  EXPECT_EQ(bytes.substr(0, 4), "KGEM");
  EXPECT_EQ(static_cast<uint8_t>(bytes[4]), 1);  // version, little-endian
  EXPECT_EQ(static_cast<uint8_t>(bytes[5]), 0);
  EXPECT_EQ(static_cast<uint8_t>(bytes[6]), 3);  // ComplEx
  EXPECT_EQ(static_cast<uint8_t>(bytes[7]), 1);  // L2
  EXPECT_EQ(static_cast<uint8_t>(bytes[8]), 5);  // dim
  // Header, four float blocks (7+3+7+3 rows of 5), CRC.
  EXPECT_EQ(bytes.size(), kModelHeaderSize + 4 * 5 * 20 + 4);
  EXPECT_EQ(Crc32(std::string_view(bytes).substr(0, bytes.size() - 4)),
            static_cast<uint32_t>(static_cast<uint8_t>(bytes[bytes.size() - 4])) |
                static_cast<uint32_t>(static_cast<uint8_t>(bytes[bytes.size() - 3])) << 8 |
                static_cast<uint32_t>(static_cast<uint8_t>(bytes[bytes.size() - 2])) << 16 |
                static_cast<uint32_t>(static_cast<uint8_t>(bytes[bytes.size() - 1])) << 24);
}

TEST(ModelIoTest, TruncatedFileIsError) {
  const std::string bytes = SerializeModel(RandomModel(ModelKind::kTransE, 2));
  for (size_t cut : {size_t{3}, size_t{19}, bytes.size() / 2, bytes.size() - 1}) {
    EXPECT_FALSE(DeserializeModel(bytes.substr(0, cut)).ok()) << cut;
  }
  EXPECT_THAT(DeserializeModel(bytes.substr(0, bytes.size() - 8)),
              StatusIs(absl::StatusCode::kDataLoss));
}

TEST(ModelIoTest, FlippedByteFailsChecksum) {
  std::string bytes = SerializeModel(RandomModel(ModelKind::kDistMult, 2));
  bytes[40] ^= 0x10;
  EXPECT_THAT(DeserializeModel(bytes),
              StatusIs(absl::StatusCode::kDataLoss, "checksum"));
}

TEST(ModelIoTest, VersionMismatch) {
  std::string bytes = SerializeModel(RandomModel(ModelKind::kDistMult, 2));
  bytes[4] = 9;
  EXPECT_THAT(DeserializeModel(bytes),
              StatusIs(absl::StatusCode::kFailedPrecondition, "version"));
}

TEST(ModelIoTest, BadMagic) {
  std::string bytes = SerializeModel(RandomModel(ModelKind::kDistMult, 2));
  bytes[0] = 'X';
  EXPECT_THAT(DeserializeModel(bytes),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ModelIoTest, TransHWithoutNormalBlock) {
  // A TransE file relabeled as TransH lacks exactly the w_r block.
  std::string bytes = SerializeModel(RandomModel(ModelKind::kTransE, 2));
  bytes[6] = 1;
  const std::string body = bytes.substr(0, bytes.size() - 4);
  const uint32_t crc = Crc32(body);
  std::string fixed = body;
  for (int i = 0; i < 4; ++i) fixed.push_back(static_cast<char>(crc >> (8 * i)));
  EXPECT_THAT(DeserializeModel(fixed),
              StatusIs(absl::StatusCode::kInvalidArgument, "w_r"));
}

TEST(ModelIoTest, MissingFileNamesPath) {
  EXPECT_THAT(LoadModel("/no/such/model.kgem"),
              StatusIs(absl::StatusCode::kNotFound, "/no/such/model.kgem"));
}

}  // namespace
}  // namespace kgmia
