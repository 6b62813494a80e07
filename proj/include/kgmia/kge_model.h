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

#ifndef KGMIA_KGE_MODEL_H_
#define KGMIA_KGE_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "kgmia/triple_store.h"

namespace kgmia {

enum class ModelKind : uint8_t {
  kTransE = 0,
  kTransH = 1,
  kDistMult = 2,
  kComplEx = 3,
};

enum class NormKind : uint8_t { kL1 = 0, kL2 = 1 };

enum class LossKind : uint8_t { kMargin = 0, kLogistic = 1 };

inline constexpr ModelKind kAllModelKinds[] = {
    ModelKind::kTransE, ModelKind::kTransH, ModelKind::kDistMult,
    ModelKind::kComplEx};

std::string_view ModelKindName(ModelKind kind);
absl::StatusOr<ModelKind> ParseModelKind(std::string_view name);
std::string_view NormKindName(NormKind norm);
absl::StatusOr<NormKind> ParseNormKind(std::string_view name);
std::string_view LossKindName(LossKind loss);
absl::StatusOr<LossKind> ParseLossKind(std::string_view name);

// Translation models train with the margin loss, bilinear ones with the
// logistic loss.
LossKind NativeLossKind(ModelKind kind);
inline bool IsTranslational(ModelKind kind) {
  return kind == ModelKind::kTransE || kind == ModelKind::kTransH;
}

// Dense row-major float32 matrix.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(uint32_t rows, uint32_t dim)
      : rows_(rows), dim_(dim), data_(size_t{rows} * dim, 0.0f) {}

  uint32_t rows() const { return rows_; }
  uint32_t dim() const { return dim_; }
  std::span<float> row(uint32_t i) {
    return {data_.data() + size_t{i} * dim_, dim_};
  }
  std::span<const float> row(uint32_t i) const {
    return {data_.data() + size_t{i} * dim_, dim_};
  }
  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

 private:
  uint32_t rows_ = 0;
  uint32_t dim_ = 0;
  std::vector<float> data_;
};

// Entity and relation embeddings for one of the four score functions.
// Scores follow a single convention: lower means more plausible.
//   TransE   ||h + r - t||
//   TransH   ||(h - w.h w) + r - (t - w.t w)||
//   DistMult -sum(h * r * t)
//   ComplEx  -Re(sum(h * r * conj(t)))
class KgeModel {
 public:
  KgeModel() = default;

  // Zero-initialized model. Fails on a zero dimension or empty vocabulary.
  static absl::StatusOr<KgeModel> Create(ModelKind kind, NormKind norm,
                                         uint32_t dim, VocabSizes vocab);

  ModelKind kind() const { return kind_; }
  NormKind norm() const { return norm_; }
  uint32_t dim() const { return dim_; }
  uint32_t num_entities() const { return entities_.rows(); }
  uint32_t num_relations() const { return relations_.rows(); }
  VocabSizes vocab_sizes() const { return {num_entities(), num_relations()}; }

  bool IsValid(const Triple& t) const {
    return t.head < num_entities() && t.tail < num_entities() &&
           t.relation < num_relations();
  }

  absl::StatusOr<double> Score(const Triple& t) const;
  // Caller guarantees IsValid(t).
  double ScoreUnchecked(const Triple& t) const;

  EmbeddingTable& entities() { return entities_; }
  const EmbeddingTable& entities() const { return entities_; }
  EmbeddingTable& relations() { return relations_; }
  const EmbeddingTable& relations() const { return relations_; }
  // TransH hyperplane normals w_r; empty otherwise.
  EmbeddingTable& normals() { return normals_; }
  const EmbeddingTable& normals() const { return normals_; }
  // ComplEx imaginary parts; empty otherwise.
  EmbeddingTable& entities_im() { return entities_im_; }
  const EmbeddingTable& entities_im() const { return entities_im_; }
  EmbeddingTable& relations_im() { return relations_im_; }
  const EmbeddingTable& relations_im() const { return relations_im_; }

  // Non-empty tables in serialization order: entity, relation, [normal],
  // [entity_im, relation_im].
  std::vector<EmbeddingTable*> Tables();
  std::vector<const EmbeddingTable*> Tables() const;

  bool AllFinite() const;

  friend bool operator==(const KgeModel&, const KgeModel&) = default;

 private:
  ModelKind kind_ = ModelKind::kTransE;
  NormKind norm_ = NormKind::kL1;
  uint32_t dim_ = 0;
  EmbeddingTable entities_;
  EmbeddingTable relations_;
  EmbeddingTable normals_;
  EmbeddingTable entities_im_;
  EmbeddingTable relations_im_;
};

}  // namespace kgmia

#endif  // KGMIA_KGE_MODEL_H_
