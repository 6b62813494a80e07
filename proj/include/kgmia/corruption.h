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

#ifndef KGMIA_CORRUPTION_H_
#define KGMIA_CORRUPTION_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "kgmia/rng.h"
#include "kgmia/triple_store.h"

namespace kgmia {

enum class CorruptedSlot : uint8_t { kHead, kTail, kRelation };

struct CorruptionSample {
  Triple original;
  Triple corrupted;
  CorruptedSlot corrupted_slot = CorruptedSlot::kHead;
};

struct CorruptionOptions {
  // Reject candidates found in the filter set.
  bool filtered = false;
  // Also corrupt relations: head, relation and tail each with probability 1/3.
  bool corrupt_relations = false;
  int max_attempts = 100;
};

// Thread-compatible counter of filtered draws that fell back to unfiltered.
struct CorruptionStats {
  uint64_t fallbacks = 0;
};

// Replaces the head or the tail (coin flip) with a uniformly drawn different
// entity. `filter` is consulted only in filtered mode; after `max_attempts`
// rejected draws the last candidate is returned and `stats->fallbacks` is
// incremented.
absl::StatusOr<CorruptionSample> CorruptTriple(
    const Triple& triple, VocabSizes vocab, Rng& rng,
    const CorruptionOptions& options = {}, const TripleSet* filter = nullptr,
    CorruptionStats* stats = nullptr);

// Store-level entry point; filtered mode uses the store's membership index.
absl::StatusOr<CorruptionSample> SampleCorruption(
    const TripleStore& store, const Triple& triple, Rng& rng,
    const CorruptionOptions& options = {}, CorruptionStats* stats = nullptr);

}  // namespace kgmia

#endif  // KGMIA_CORRUPTION_H_
