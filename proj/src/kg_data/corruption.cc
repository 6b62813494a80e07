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

#include "kgmia/corruption.h"

#include "kgmia/strings.h"

namespace kgmia {
namespace {

// Uniform over [0, n) excluding `avoid`.
uint32_t DrawDifferent(uint32_t n, uint32_t avoid, Rng& rng) {
  const uint32_t draw = static_cast<uint32_t>(rng.UniformInt(n - 1));
  return draw >= avoid ? draw + 1 : draw;
}

CorruptionSample DrawOnce(const Triple& triple, VocabSizes vocab, Rng& rng,
                          bool corrupt_relations) {
  CorruptionSample s;
  s.original = triple;
  s.corrupted = triple;
  if (corrupt_relations && vocab.num_relations >= 2 && rng.UniformInt(3) == 0) {
    s.corrupted_slot = CorruptedSlot::kRelation;
    s.corrupted.relation =
        DrawDifferent(vocab.num_relations, triple.relation, rng);
    return s;
  }
  if (rng.CoinFlip()) {
    s.corrupted_slot = CorruptedSlot::kHead;
    s.corrupted.head = DrawDifferent(vocab.num_entities, triple.head, rng);
  } else {
    s.corrupted_slot = CorruptedSlot::kTail;
    s.corrupted.tail = DrawDifferent(vocab.num_entities, triple.tail, rng);
  }
  return s;
}

}  // namespace

absl::StatusOr<CorruptionSample> CorruptTriple(
    const Triple& triple, VocabSizes vocab, Rng& rng,
    const CorruptionOptions& options, const TripleSet* filter,
    CorruptionStats* stats) {
  if (vocab.num_entities < 2) {
    return absl::FailedPreconditionError(StrCat(
        "corruption needs at least 2 entities, have ", vocab.num_entities));
  }
  if (triple.head >= vocab.num_entities || triple.tail >= vocab.num_entities ||
      triple.relation >= vocab.num_relations) {
    return absl::OutOfRangeError("triple outside vocabulary");
  }
  CorruptionSample s = DrawOnce(triple, vocab, rng, options.corrupt_relations);
  if (!options.filtered || filter == nullptr) return s;
  for (int attempt = 1; attempt < options.max_attempts; ++attempt) {
    if (!filter->contains(s.corrupted)) return s;
    s = DrawOnce(triple, vocab, rng, options.corrupt_relations);
  }
  if (filter->contains(s.corrupted) && stats != nullptr) ++stats->fallbacks;
  return s;
}

absl::StatusOr<CorruptionSample> SampleCorruption(
    const TripleStore& store, const Triple& triple, Rng& rng,
    const CorruptionOptions& options, CorruptionStats* stats) {
  return CorruptTriple(triple, store.vocab_sizes(), rng, options,
                       &store.membership_index(), stats);
}

}  // namespace kgmia
