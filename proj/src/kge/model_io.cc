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

#include <bit>
#include <cstring>

#include "kgmia/strings.h"
#include "kgmia/status_macros.h"
#include "kgmia/triple_store.h"

namespace kgmia {
namespace {

void PutU16(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void PutU32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t GetU32(std::string_view in, size_t at) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  }
  return v;
}

uint16_t GetU16(std::string_view in, size_t at) {
  return static_cast<uint16_t>(static_cast<unsigned char>(in[at]) |
                               (static_cast<unsigned char>(in[at + 1]) << 8));
}

// Block sizes in rows, in file order.
std::vector<uint64_t> BlockRows(ModelKind kind, uint32_t ne, uint32_t nr) {
  std::vector<uint64_t> rows = {ne, nr};
  if (kind == ModelKind::kTransH) rows.push_back(nr);
  if (kind == ModelKind::kComplEx) {
    rows.push_back(ne);
    rows.push_back(nr);
  }
  return rows;
}

}  // namespace

std::string SerializeModel(const KgeModel& model) {
  std::string out(kModelMagic, sizeof(kModelMagic));
  PutU16(out, kModelFormatVersion);
  out.push_back(static_cast<char>(model.kind()));
  out.push_back(static_cast<char>(model.norm()));
  PutU32(out, model.dim());
  PutU32(out, model.num_entities());
  PutU32(out, model.num_relations());
  for (const EmbeddingTable* table : model.Tables()) {
    for (float v : table->data()) PutU32(out, std::bit_cast<uint32_t>(v));
  }
  PutU32(out, Crc32(out));
  return out;
}

absl::StatusOr<KgeModel> DeserializeModel(std::string_view bytes) {
  if (bytes.size() < kModelHeaderSize + 4) {
    return absl::DataLossError(StrCat(
        "model file truncated: ", bytes.size(), " bytes is shorter than the header"));
  }
  if (std::memcmp(bytes.data(), kModelMagic, sizeof(kModelMagic)) != 0) {
    return absl::InvalidArgumentError("not a model file (bad magic)");
  }
  const uint16_t version = GetU16(bytes, 4);
  if (version != kModelFormatVersion) {
    return absl::FailedPreconditionError(StrCat(
        "unsupported model format version ", version, " (expected ",
        kModelFormatVersion, ")"));
  }
  const uint8_t kind_tag = static_cast<uint8_t>(bytes[6]);
  const uint8_t norm_tag = static_cast<uint8_t>(bytes[7]);
  if (kind_tag > static_cast<uint8_t>(ModelKind::kComplEx)) {
    return absl::InvalidArgumentError(StrCat("unknown kind tag ", int{kind_tag}));
  }
  if (norm_tag > static_cast<uint8_t>(NormKind::kL2)) {
    return absl::InvalidArgumentError(StrCat("unknown norm tag ", int{norm_tag}));
  }
  const auto kind = static_cast<ModelKind>(kind_tag);
  const uint32_t dim = GetU32(bytes, 8);
  const uint32_t ne = GetU32(bytes, 12);
  const uint32_t nr = GetU32(bytes, 16);

  const std::vector<uint64_t> rows = BlockRows(kind, ne, nr);
  uint64_t expected = kModelHeaderSize + 4;
  for (uint64_t r : rows) expected += r * dim * 4;
  if (bytes.size() != expected) {
    // A TransH file written without its normal block is a schema error,
    // anything else is truncation or trailing garbage.
    if (kind == ModelKind::kTransH &&
        bytes.size() == expected - uint64_t{nr} * dim * 4) {
      return absl::InvalidArgumentError(
          "TransH model is missing its relation normal-vector (w_r) block");
    }
    return absl::DataLossError(StrCat("model file size ", bytes.size(),
                                            " does not match expected ",
                                            expected, " (truncated or corrupt)"));
  }
  const uint32_t stored_crc = GetU32(bytes, bytes.size() - 4);
  if (Crc32(bytes.substr(0, bytes.size() - 4)) != stored_crc) {
    return absl::DataLossError("model file checksum mismatch");
  }

  KGMIA_ASSIGN_OR_RETURN(
      KgeModel model,
      KgeModel::Create(kind, static_cast<NormKind>(norm_tag), dim, {ne, nr}));
  size_t at = kModelHeaderSize;
  for (EmbeddingTable* table : model.Tables()) {
    for (float& v : table->data()) {
      v = std::bit_cast<float>(GetU32(bytes, at));
      at += 4;
    }
  }
  return model;
}

absl::Status SaveModel(const KgeModel& model, const std::string& path) {
  return WriteStringToFile(path, SerializeModel(model));
}

absl::StatusOr<KgeModel> LoadModel(const std::string& path) {
  KGMIA_ASSIGN_OR_RETURN(std::string bytes, ReadFileToString(path));
  auto model = DeserializeModel(bytes);
  if (!model.ok()) {
    return absl::Status(model.status().code(),
                        StrCat(path, ": ", std::string(model.status().message())));
  }
  return model;
}

}  // namespace kgmia
