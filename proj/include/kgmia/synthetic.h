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

#ifndef KGMIA_SYNTHETIC_H_
#define KGMIA_SYNTHETIC_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "kgmia/triple_store.h"

namespace kgmia {

struct SyntheticConfig {
  uint32_t entities = 1000;
  uint32_t relations = 10;
  uint64_t triples = 20000;
  // Entity popularity follows rank^-exponent; 0 gives uniform degrees.
  double zipf_exponent = 0.8;
  uint64_t seed = 0;
};

// Random KG with power-law entity degrees. Heads and tails are drawn from
// the same popularity law over a seeded rank permutation, relations
// uniformly; self-loops and duplicates are redrawn. Entities are named
// e0.., relations r0.., and every vocabulary entry is kept even if unused.
absl::StatusOr<TripleStore> GenerateSyntheticKg(const SyntheticConfig& config);

}  // namespace kgmia

#endif  // KGMIA_SYNTHETIC_H_
