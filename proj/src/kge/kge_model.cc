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

#include <cmath>

#include "kgmia/strings.h"
#include "kgmia/kge_kernels.h"

namespace kgmia {

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTransE:
      return "TransE";
    case ModelKind::kTransH:
      return "TransH";
    case ModelKind::kDistMult:
      return "DistMult";
    case ModelKind::kComplEx:
      return "ComplEx";
  }
  return "?";
}

absl::StatusOr<ModelKind> ParseModelKind(std::string_view name) {
  const std::string lower = AsciiToLower(name);
  for (ModelKind k : kAllModelKinds) {
    if (AsciiToLower(ModelKindName(k)) == lower) return k;
  }
  return absl::InvalidArgumentError(StrCat("unknown model kind: ", name));
}

std::string_view NormKindName(NormKind norm) {
  return norm == NormKind::kL1 ? "L1" : "L2";
}

absl::StatusOr<NormKind> ParseNormKind(std::string_view name) {
  const std::string lower = AsciiToLower(name);
  if (lower == "l1") return NormKind::kL1;
  if (lower == "l2") return NormKind::kL2;
  return absl::InvalidArgumentError(StrCat("unknown norm: ", name));
}

std::string_view LossKindName(LossKind loss) {
  return loss == LossKind::kMargin ? "margin" : "logistic";
}

absl::StatusOr<LossKind> ParseLossKind(std::string_view name) {
  const std::string lower = AsciiToLower(name);
  if (lower == "margin") return LossKind::kMargin;
  if (lower == "logistic") return LossKind::kLogistic;
  return absl::InvalidArgumentError(StrCat("unknown loss: ", name));
}

LossKind NativeLossKind(ModelKind kind) {
  return IsTranslational(kind) ? LossKind::kMargin : LossKind::kLogistic;
}

absl::StatusOr<KgeModel> KgeModel::Create(ModelKind kind, NormKind norm,
                                          uint32_t dim, VocabSizes vocab) {
  if (dim == 0) return absl::InvalidArgumentError("dim must be positive");
  if (vocab.num_entities == 0 || vocab.num_relations == 0) {
    return absl::InvalidArgumentError("empty vocabulary");
  }
  KgeModel m;
  m.kind_ = kind;
  m.norm_ = norm;
  m.dim_ = dim;
  m.entities_ = EmbeddingTable(vocab.num_entities, dim);
  m.relations_ = EmbeddingTable(vocab.num_relations, dim);
  if (kind == ModelKind::kTransH) {
    m.normals_ = EmbeddingTable(vocab.num_relations, dim);
  } else if (kind == ModelKind::kComplEx) {
    m.entities_im_ = EmbeddingTable(vocab.num_entities, dim);
    m.relations_im_ = EmbeddingTable(vocab.num_relations, dim);
  }
  return m;
}

absl::StatusOr<double> KgeModel::Score(const Triple& t) const {
  if (!IsValid(t)) {
    return absl::OutOfRangeError(StrCat(
        "triple (", t.head, ",", t.relation, ",", t.tail,
        ") outside model tables of size ", num_entities(), "/",
        num_relations()));
  }
  return ScoreUnchecked(t);
}

double KgeModel::ScoreUnchecked(const Triple& t) const {
  // Large enough for any dimension; only translation models use it.
  thread_local std::vector<double> scratch;
  if (scratch.size() < dim_) scratch.resize(dim_);
  return ScoreRows(kind_, norm_, ModelRows(*this, t),
                   std::span<double>(scratch));
}

std::vector<EmbeddingTable*> KgeModel::Tables() {
  std::vector<EmbeddingTable*> out = {&entities_, &relations_};
  if (kind_ == ModelKind::kTransH) out.push_back(&normals_);
  if (kind_ == ModelKind::kComplEx) {
    out.push_back(&entities_im_);
    out.push_back(&relations_im_);
  }
  return out;
}

std::vector<const EmbeddingTable*> KgeModel::Tables() const {
  std::vector<const EmbeddingTable*> out;
  for (EmbeddingTable* t : const_cast<KgeModel*>(this)->Tables()) {
    out.push_back(t);
  }
  return out;
}

bool KgeModel::AllFinite() const {
  for (const EmbeddingTable* t : Tables()) {
    for (float v : t->data()) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

}  // namespace kgmia
